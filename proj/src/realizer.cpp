#include "algpos/realizer.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

#include "algpos/constructions.hpp"
#include "algpos/errors.hpp"
#include "algpos/structure.hpp"

namespace algpos {

bool hypothesis_holds(const SignPattern& a) {
  if (!is_ap_irreducible(a)) return false;
  const Components comps = irreducible_components(positive_part(a));
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j)
      if (a.at(i, j) == Sign::Plus &&
          comps.part_of(static_cast<int>(i)) != comps.part_of(static_cast<int>(j)))
        return false;
  return true;
}

std::pair<SignPattern, SplitMap> split_positive_diagonals(const SignPattern& x) {
  const Eigen::Index n = x.order();
  SplitMap map;
  map.original_order = n;
  map.image.resize(n);
  Eigen::Index next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x.at(i, i) == Sign::Minus) throw NegativeDiagonal("at index " + std::to_string(i + 1));
    if (x.at(i, i) == Sign::Plus) {
      map.image[i] = {next, next + 1};
      next += 2;
    } else {
      map.image[i] = {next, -1};
      next += 1;
    }
  }
  map.split_order = next;
  map.preimage.resize(next);
  for (Eigen::Index i = 0; i < n; ++i) {
    map.preimage[map.image[i].first] = i;
    if (map.image[i].second >= 0) map.preimage[map.image[i].second] = i;
  }

  // Row i moves to i'' (arcs out of i), column i moves to i' (arcs into i).
  auto row_image = [&](Eigen::Index i) {
    return map.image[i].second >= 0 ? map.image[i].second : map.image[i].first;
  };
  auto col_image = [&](Eigen::Index i) { return map.image[i].first; };

  SignPattern y(next);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (x.at(i, j) != Sign::Zero) y.set(row_image(i), col_image(j), x.at(i, j));
  for (Eigen::Index i = 0; i < n; ++i)
    if (map.image[i].second >= 0) y.set(map.image[i].first, map.image[i].second, Sign::Plus);
  return {y, map};
}

namespace {

// ---------------------------------------------------------------------------
// Working state: a certified triple over a named index set kept in ascending
// id order. Original vertices carry ids [0, nY); pending quotient vertices
// carry ids nY + engine position, so canonical order is also display order.
// ---------------------------------------------------------------------------

struct State {
  std::vector<int> ids;  // ascending
  Eigen::MatrixXd M;
  Eigen::VectorXd u, v;
  double lambda = 1.0;

  Eigen::Index pos(int id) const {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id)
      throw EngineInvariantBroken("unknown index id " + std::to_string(id));
    return it - ids.begin();
  }

  bool has(int id) const { return std::binary_search(ids.begin(), ids.end(), id); }

  EigenTriple triple() const { return {M, lambda, u, v}; }

  /// Permutation of the current state into the given id order.
  EigenTriple arranged(const std::vector<int>& order) const {
    std::vector<Eigen::Index> sigma(order.size());
    for (size_t i = 0; i < order.size(); ++i) sigma[i] = pos(order[i]);
    return {permute(M, sigma), lambda, permute(u, sigma), permute(v, sigma)};
  }

  /// Adopts an op output whose rows are named by new_ids; restores
  /// ascending id order.
  void adopt(const EigenTriple& t, std::vector<int> new_ids) {
    std::vector<Eigen::Index> idx(new_ids.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](Eigen::Index a, Eigen::Index b) { return new_ids[a] < new_ids[b]; });
    M = permute(t.M, idx);
    u = permute(t.u, idx);
    v = permute(t.v, idx);
    lambda = t.lambda;
    std::sort(new_ids.begin(), new_ids.end());
    ids = std::move(new_ids);
  }

  void verify(const std::string& where) const {
    TripleCheck c = check_triple(triple());
    if (!c.ok) throw EngineInvariantBroken(where + ": " + c.reason);
  }

  /// All ids except the listed ones, ascending.
  std::vector<int> others(const std::vector<int>& excluded) const {
    std::vector<int> rest;
    for (int id : ids)
      if (std::find(excluded.begin(), excluded.end(), id) == excluded.end())
        rest.push_back(id);
    return rest;
  }
};

// One ear attachment inside a component expansion.
struct StagePlan {
  std::vector<int> path;        // new vertices, path order
  int from = -1, to = -1;       // the + entry being subdivided
  int red_to = -1;              // relocation target of the riding red (-1: stays)
  int next_from = -1, next_to = -1;  // chord to install for the next stage
  bool next_moves_red = false;       // the next stage relocates the red again
};

struct CompPlan {
  std::vector<int> cycle;  // V_1 in cycle order, last element = p
  int p = -1, q = -1;
  int entry_target = -1;             // column receiving the old quotient column
  int chord_from = -1, chord_to = -1;  // chord present right after entry
  std::vector<StagePlan> stages;
};

// ---------------------------------------------------------------------------
// Plan search. The deterministic nested-sequence choices come first; when
// the riding constraints reject them, alternative ear attachments are
// explored depth-first within a node budget.
// ---------------------------------------------------------------------------

struct EarChoice {
  std::vector<int> path;
  int from, to;
};

std::vector<EarChoice> ear_candidates(const Digraph& g, const std::vector<bool>& inside) {
  std::vector<EarChoice> out;
  const int n = g.vertex_count();
  for (int x = 0; x < n; ++x) {
    if (!inside[x]) continue;
    std::vector<EarChoice> mine;
    for (int y : g.out(x)) {
      if (inside[y]) continue;
      std::vector<int> back = shortest_path_to_set(g, {y}, inside);
      if (back.empty()) continue;
      EarChoice e;
      e.path.assign(back.begin(), back.end() - 1);
      e.from = x;
      e.to = back.back();
      mine.push_back(std::move(e));
    }
    std::sort(mine.begin(), mine.end(), [](const EarChoice& a, const EarChoice& b) {
      if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
      return a.path < b.path;
    });
    out.insert(out.end(), mine.begin(), mine.end());
  }
  return out;
}

struct PlanSearch {
  const Digraph& g;  // local indices
  int p, q;          // local; q == -1 when no red enters
  bool strict;       // also require chord hosting along the ride
  int budget = 20000;

  std::optional<std::pair<std::vector<int>, std::vector<EarChoice>>> result{};

  bool feasible(const std::vector<int>& cycle, const std::vector<EarChoice>& ears) const {
    if (q < 0) return true;
    const bool in_v1 = std::find(cycle.begin(), cycle.end(), q) != cycle.end();
    if (in_v1) return true;
    int K = -1;
    for (size_t i = 0; i < ears.size(); ++i)
      if (std::find(ears[i].path.begin(), ears[i].path.end(), q) != ears[i].path.end()) {
        K = static_cast<int>(i);
        break;
      }
    if (K < 0) return false;
    for (int i = 0; i < K; ++i) {
      const auto& pi = ears[i].path;
      if (std::find(pi.begin(), pi.end(), ears[i + 1].to) == pi.end()) return false;
      if (strict && std::find(pi.begin(), pi.end(), ears[i + 1].from) == pi.end())
        return false;
    }
    return true;
  }

  bool dfs(std::vector<bool>& inside, int covered, const std::vector<int>& cycle,
           std::vector<EarChoice>& ears) {
    if (budget-- <= 0) return false;
    if (covered == g.vertex_count()) {
      if (!feasible(cycle, ears)) return false;
      result = {cycle, ears};
      return true;
    }
    for (const EarChoice& e : ear_candidates(g, inside)) {
      ears.push_back(e);
      for (int w : e.path) inside[w] = true;
      if (dfs(inside, covered + static_cast<int>(e.path.size()), cycle, ears)) return true;
      for (int w : e.path) inside[w] = false;
      ears.pop_back();
    }
    return false;
  }

  bool run() {
    std::vector<std::vector<int>> cycles;
    std::vector<int> def = shortest_cycle_through(g, p);
    if (def.empty()) return false;
    cycles.push_back(def);
    for (int w : g.out(p)) {
      std::vector<bool> target(g.vertex_count(), false);
      target[p] = true;
      std::vector<int> back = shortest_path_to_set(g, {w}, target);
      if (back.empty()) continue;
      std::vector<int> cyc{p};
      cyc.insert(cyc.end(), back.begin(), back.end() - 1);
      if (std::find(cycles.begin(), cycles.end(), cyc) == cycles.end()) cycles.push_back(cyc);
    }
    for (const auto& cyc : cycles) {
      std::vector<bool> inside(g.vertex_count(), false);
      for (int w : cyc) inside[w] = true;
      std::vector<EarChoice> ears;
      if (dfs(inside, static_cast<int>(cyc.size()), cyc, ears)) return true;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// The engine proper.
// ---------------------------------------------------------------------------

struct Engine {
  const SignPattern& Y;
  int nY;
  std::vector<std::string> labels;  // per id (originals then quotient slots)

  Components comps;
  Digraph blue_graph;  // D(Y_+)
  std::map<std::pair<int, int>, std::pair<int, int>> red_of;  // comp pair -> arc
  NestedSequence ns0;
  std::vector<int> order;                // engine position -> component index
  int m1 = 0;                            // quotient cycle length
  std::vector<int> q_target, p_source;   // per engine position, Y ids (-1 if none)

  State st;
  ConstructionTrace trace;

  Engine(const SignPattern& y, const std::vector<std::string>* user_labels)
      : Y(y), nY(static_cast<int>(y.order())) {
    if (user_labels) {
      labels = *user_labels;
      if (labels.size() != static_cast<size_t>(nY))
        throw PreconditionViolated("label count does not match pattern order");
    } else {
      for (int i = 0; i < nY; ++i) labels.push_back(std::to_string(i + 1));
    }
  }

  std::string label(int id) const {
    if (id < nY) return labels[id];
    return "v" + std::to_string(id - nY + 1);
  }

  void record(std::string rule, std::map<std::string, Eigen::Index> params, double eps,
              std::vector<std::tuple<Eigen::Index, Eigen::Index, Sign, double>> added) {
    TraceStep step;
    step.rule = std::move(rule);
    step.params = std::move(params);
    step.epsilon = eps;
    step.added = std::move(added);
    step.pattern = sign_of(st.M, 0.0);
    for (int id : st.ids) step.labels.push_back(label(id));
    EigenTriple t = st.triple();
    step.right_residual = t.right_residual();
    step.left_residual = t.left_residual();
    trace.push_back(std::move(step));
  }

  // Adds signed entries (by id) via an epsilon perturbation. Extra
  // acceptance predicate runs against the candidate triple; the magnitude
  // schedule grows past 1 only when the predicate rejects every small one.
  double lift_entries(const std::vector<std::tuple<int, int, Sign>>& entries,
                      const std::function<bool(const EigenTriple&)>& extra_ok = {}) {
    SignPattern target = sign_of(st.M, 0.0);
    Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(st.M.rows(), st.M.cols());
    for (auto [ri, ci, s] : entries) {
      target.set(st.pos(ri), st.pos(ci), s);
      dir(st.pos(ri), st.pos(ci)) = s == Sign::Plus ? 1.0 : -1.0;
    }
    std::vector<double> schedule;
    for (double e = 1.0; e > 1e-18; e *= 0.5) schedule.push_back(e);
    if (extra_ok)
      for (double e = 2.0; e <= 1024.0; e *= 2.0) schedule.push_back(e);
    for (double eps : schedule) {
      Eigen::MatrixXd cand = st.M + eps * dir;
      if (sign_of(cand, 0.0) != target) continue;
      Verdict verdict = find_eigen_triple(cand);
      if (!verdict.positive || verdict.lambda <= 0.0) continue;
      EigenTriple t{cand, verdict.lambda, verdict.u, verdict.v};
      if (!check_triple(t).ok) continue;
      if (extra_ok && !extra_ok(t)) continue;
      st.M = t.M;
      st.lambda = t.lambda;
      st.u = t.u;
      st.v = t.v;
      return eps;
    }
    throw EngineInvariantBroken("perturbation found no admissible epsilon");
  }

  // ---- setup ------------------------------------------------------------

  void analyze() {
    for (Eigen::Index i = 0; i < Y.order(); ++i)
      if (Y.at(i, i) != Sign::Zero)
        throw PreconditionViolated("diagonal entry at index " + std::to_string(i + 1));
    if (!is_ap_irreducible(Y)) throw PreconditionViolated("pattern is not AP-irreducible");
    comps = irreducible_components(positive_part(Y));
    for (Eigen::Index i = 0; i < Y.order(); ++i)
      for (Eigen::Index j = 0; j < Y.order(); ++j)
        if (Y.at(i, j) == Sign::Plus &&
            comps.part_of(static_cast<int>(i)) != comps.part_of(static_cast<int>(j)))
          throw PreconditionViolated("cross-component + entry");
    if (!is_minimally_ap_irreducible(Y))
      throw PreconditionViolated("pattern is not minimally AP-irreducible");

    blue_graph = digraph_of(positive_part(Y));
    ArcColoring coloring = color_arcs(Y, comps);
    for (auto [p, q] : coloring.red) {
      auto key = std::make_pair(comps.part_of(p), comps.part_of(q));
      if (red_of.count(key))
        throw PreconditionViolated("two red arcs between one component pair");
      red_of[key] = {p, q};
    }
    Digraph d0 = quotient_digraph(coloring, comps);
    const int m = d0.vertex_count();
    if (m > 1 && !is_minimally_strongly_connected(d0))
      throw PreconditionViolated("quotient digraph is not minimally strongly connected");

    ns0 = m == 1 ? NestedSequence{{0}, {}} : nested_sequence(d0, 0);
    order = ns0.cycle;
    for (const auto& ear : ns0.ears)
      order.insert(order.end(), ear.path.begin(), ear.path.end());
    m1 = static_cast<int>(ns0.cycle.size());

    const int mr = static_cast<int>(order.size());
    q_target.assign(mr, -1);
    p_source.assign(mr, -1);
    auto red = [&](int ci, int cj) -> std::pair<int, int> {
      auto it = red_of.find({ci, cj});
      if (it == red_of.end())
        throw EngineInvariantBroken("missing red arc between components " +
                                    std::to_string(ci + 1) + " and " + std::to_string(cj + 1));
      return it->second;
    };
    if (m1 > 1) {
      for (int i = 0; i < m1; ++i) {
        q_target[i] = red(order[(i + m1 - 1) % m1], order[i]).second;
        p_source[i] = red(order[i], order[(i + 1) % m1]).first;
      }
    } else {
      // Single component: no red arcs exist; the expansion anchor is the
      // smallest vertex and no column relocation ever happens.
      p_source[0] = comps.parts[order[0]].front();
    }
    int epos = m1;
    for (const auto& ear : ns0.ears) {
      const int g = static_cast<int>(ear.path.size());
      for (int i = 0; i < g; ++i) {
        int prev_comp = i == 0 ? ear.from : ear.path[i - 1];
        int next_comp = i + 1 < g ? ear.path[i + 1] : ear.to;
        q_target[epos + i] = red(prev_comp, ear.path[i]).second;
        p_source[epos + i] = red(ear.path[i], next_comp).first;
      }
      epos += g;
    }
  }

  // ---- step 1: base cycle over the quotient ------------------------------

  void base() {
    SignPattern base_pattern(m1);
    for (int i = 0; i < m1; ++i) {
      base_pattern.set(i, i, Sign::Plus);
      if (m1 > 1) base_pattern.set(i, (i + 1) % m1, Sign::Minus);
    }
    EigenTriple t = realize_base_cycle(base_pattern);
    std::vector<int> ids(m1);
    for (int i = 0; i < m1; ++i) ids[i] = nY + i;
    st.adopt(t, ids);
    st.verify("base");
    record("base-cycle", {{"m1", m1}}, 0.0, {});
  }

  // ---- step 2: expand one quotient vertex into its component -------------

  // The single off-diagonal entry of Q's row/column, or -1.
  int column_neighbor(int qid) const {
    int found = -1;
    const Eigen::Index qp = st.pos(qid);
    for (Eigen::Index r = 0; r < st.M.rows(); ++r) {
      if (r == qp || st.M(r, qp) == 0.0) continue;
      if (found >= 0) throw EngineInvariantBroken("quotient column with two entries");
      found = st.ids[r];
    }
    return found;
  }

  CompPlan plan_component(int epos) const {
    const std::vector<int>& alpha = comps.parts[order[epos]];
    const int na = static_cast<int>(alpha.size());
    Digraph g = blue_graph.induced(alpha);
    auto to_local = [&](int id) {
      return static_cast<int>(std::lower_bound(alpha.begin(), alpha.end(), id) - alpha.begin());
    };
    auto to_global = [&](int loc) { return alpha[loc]; };

    CompPlan plan;
    plan.p = p_source[epos];
    plan.q = q_target[epos];
    const int p_loc = to_local(plan.p);
    const int q_loc = q_target[epos] >= 0 ? to_local(plan.q) : -1;
    if (na < 2)
      throw EngineInvariantBroken("singleton component inside the zero-diagonal engine");

    bool is_cycle = true;
    for (int iv = 0; iv < na; ++iv)
      if (g.out(iv).size() != 1 || g.in(iv).size() != 1) {
        is_cycle = false;
        break;
      }
    if (is_cycle) {
      std::vector<int> cyc;
      int cur = g.out(p_loc)[0];
      while (cur != p_loc) {
        cyc.push_back(to_global(cur));
        cur = g.out(cur)[0];
      }
      cyc.push_back(plan.p);
      if (static_cast<int>(cyc.size()) != na)
        throw EngineInvariantBroken("component arcs do not form one cycle");
      plan.cycle = cyc;
      plan.entry_target = plan.q;
      return plan;
    }

    std::optional<std::pair<std::vector<int>, std::vector<EarChoice>>> found;
    {
      PlanSearch strict_search{g, p_loc, q_loc, /*strict=*/true};
      if (strict_search.run()) {
        found = strict_search.result;
      } else {
        PlanSearch loose_search{g, p_loc, q_loc, /*strict=*/false};
        if (loose_search.run()) found = loose_search.result;
      }
    }
    if (!found) {
      std::ostringstream os;
      os << "no feasible nested sequence for component {";
      for (int id : alpha) os << " " << label(id);
      os << " } with p=" << label(plan.p)
         << (plan.q >= 0 ? " q=" + label(plan.q) : std::string());
      throw EngineInvariantBroken(os.str());
    }
    auto [cycle_loc, ears] = *found;
    // Rotate so p comes last (the op keeps old vertex 0 at the cycle end).
    for (size_t i = 1; i < cycle_loc.size(); ++i) plan.cycle.push_back(to_global(cycle_loc[i]));
    plan.cycle.push_back(plan.p);

    int K = -1;
    if (q_loc >= 0 &&
        std::find(cycle_loc.begin(), cycle_loc.end(), q_loc) == cycle_loc.end()) {
      for (size_t i = 0; i < ears.size(); ++i)
        if (std::find(ears[i].path.begin(), ears[i].path.end(), q_loc) != ears[i].path.end())
          K = static_cast<int>(i);
    }
    plan.chord_from = to_global(ears[0].from);
    plan.chord_to = to_global(ears[0].to);
    plan.entry_target = q_loc >= 0 && K < 0 ? plan.q : to_global(ears[0].to);
    if (q_loc < 0) plan.entry_target = -1;

    for (size_t i = 0; i < ears.size(); ++i) {
      StagePlan sp;
      for (int w : ears[i].path) sp.path.push_back(to_global(w));
      sp.from = to_global(ears[i].from);
      sp.to = to_global(ears[i].to);
      if (K >= 0) {
        if (static_cast<int>(i) < K)
          sp.red_to = to_global(ears[i + 1].to);
        else if (static_cast<int>(i) == K)
          sp.red_to = plan.q;
      }
      if (i + 1 < ears.size()) {
        sp.next_from = to_global(ears[i + 1].from);
        sp.next_to = to_global(ears[i + 1].to);
        sp.next_moves_red = K >= 0 && static_cast<int>(i) + 1 <= K;
      }
      plan.stages.push_back(std::move(sp));
    }
    return plan;
  }

  void expand(int epos) {
    const int qid = nY + epos;
    CompPlan plan = plan_component(epos);
    const int k = static_cast<int>(plan.cycle.size());
    const bool has_in = column_neighbor(qid) >= 0;

    auto cycle_pos = [&](int id) {
      auto it = std::find(plan.cycle.begin(), plan.cycle.end(), id);
      if (it == plan.cycle.end()) throw EngineInvariantBroken("vertex not on entry cycle");
      return static_cast<Eigen::Index>(it - plan.cycle.begin());
    };

    // --- entry: replace the quotient diagonal by the V_1 cycle ---
    std::vector<int> input{qid};
    {
      auto rest = st.others({qid});
      input.insert(input.end(), rest.begin(), rest.end());
    }
    std::vector<int> out_ids(plan.cycle.begin(), plan.cycle.end());
    out_ids.insert(out_ids.end(), input.begin() + 1, input.end());

    const bool have_chord = plan.chord_from >= 0;
    bool chord_pending = false;
    std::string rule;
    std::map<std::string, Eigen::Index> params;
    double eps = 0.0;

    if (!have_chord) {
      Eigen::Index j = has_in ? cycle_pos(plan.entry_target) : 0;
      st.adopt(split_leading_diagonal(st.arranged(input), k, {Variant24::Cycle{j}}), out_ids);
      rule = "split-diagonal-cycle";
      params = {{"k", k}, {"j", j + 1}};
    } else if (!has_in || plan.entry_target == plan.chord_to) {
      Eigen::Index s = cycle_pos(plan.chord_to);
      if (plan.chord_from == plan.p) {
        st.adopt(split_leading_diagonal(st.arranged(input), k,
                                        {Variant24::SplitEntry{s, std::nullopt}}, &eps),
                 out_ids);
        rule = "split-diagonal-entry";
        params = {{"k", k}, {"s", s + 1}};
      } else {
        Eigen::Index j = cycle_pos(plan.chord_from);
        st.adopt(split_leading_diagonal(st.arranged(input), k,
                                        {Variant24::Chord{j, s, std::nullopt}}, &eps),
                 out_ids);
        rule = "split-diagonal-chord";
        params = {{"k", k}, {"j", j + 1}, {"s", s + 1}};
      }
    } else {
      // Entry target differs from the chord target: plain cycle first, the
      // chord arrives by perturbation.
      Eigen::Index j = cycle_pos(plan.entry_target);
      st.adopt(split_leading_diagonal(st.arranged(input), k, {Variant24::Cycle{j}}), out_ids);
      rule = "split-diagonal-cycle";
      params = {{"k", k}, {"j", j + 1}};
      chord_pending = true;
    }
    st.verify("component entry");

    std::vector<std::tuple<Eigen::Index, Eigen::Index, Sign, double>> added;
    if (chord_pending) {
      double ce = lift_entries({{plan.chord_from, plan.chord_to, Sign::Plus}});
      added.emplace_back(st.pos(plan.chord_from), st.pos(plan.chord_to), Sign::Plus, ce);
    }
    record(rule, params, eps, added);

    const int red_src = has_in ? column_neighbor_of(plan.entry_target) : -1;

    // --- stages: attach the ears, riding the entering red arc along ---
    for (const StagePlan& sp : plan.stages) run_stage(sp, red_src);
  }

  // Source row of the single red entry in the given column, excluding blue
  // arcs: the unique row r with M(r, col) < 0.
  int column_neighbor_of(int col_id) const {
    int found = -1;
    const Eigen::Index cp = st.pos(col_id);
    for (Eigen::Index r = 0; r < st.M.rows(); ++r) {
      if (st.M(r, cp) < 0.0) {
        if (found >= 0) throw EngineInvariantBroken("two negative entries in one column");
        found = st.ids[r];
      }
    }
    return found;
  }

  void run_stage(const StagePlan& sp, int red_src) {
    const int m = static_cast<int>(sp.path.size());
    const bool moving = sp.red_to >= 0;
    if (moving && red_src < 0) throw EngineInvariantBroken("red relocation without source");

    std::vector<int> excluded{sp.from};
    if (moving) excluded.push_back(red_src);
    std::vector<int> input{sp.from};
    {
      auto rest = st.others(excluded);
      input.insert(input.end(), rest.begin(), rest.end());
      if (moving) input.push_back(red_src);
    }
    const Eigen::Index n_cur = static_cast<Eigen::Index>(input.size());
    const Eigen::Index k_param = moving ? n_cur - 1 : n_cur;
    const Eigen::Index j =
        std::find(input.begin(), input.end(), sp.to) - input.begin();

    auto path_pos = [&](int id) {
      auto it = std::find(sp.path.begin(), sp.path.end(), id);
      return it == sp.path.end() ? Eigen::Index{-1}
                                 : static_cast<Eigen::Index>(it - sp.path.begin());
    };

    std::vector<int> out_ids(sp.path.begin(), sp.path.end());
    out_ids.insert(out_ids.end(), input.begin(), input.end());

    const bool have_next = sp.next_from >= 0;
    const Eigen::Index next_from_pos = have_next ? path_pos(sp.next_from) : -1;
    const Eigen::Index next_to_pos = have_next ? path_pos(sp.next_to) : -1;

    std::string rule;
    std::map<std::string, Eigen::Index> params;
    double eps = 0.0;
    bool chord_pending = false;

    if (moving) {
      const Eigen::Index reloc = path_pos(sp.red_to);
      if (reloc < 0) throw EngineInvariantBroken("red target not on the new path");
      if (have_next && next_from_pos >= 0 && sp.next_to == sp.red_to) {
        if (next_from_pos == m - 1) {
          st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                    {Variant25::SplitTerminal{reloc, std::nullopt}}, &eps),
                   out_ids);
          rule = "subdivide-arc-terminal";
          params = {{"m", m}, {"t", reloc + 1}};
        } else {
          st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                    {Variant25::Chord{next_from_pos, reloc, std::nullopt}},
                                    &eps),
                   out_ids);
          rule = "subdivide-arc-chord";
          params = {{"m", m}, {"s", next_from_pos + 1}, {"t", reloc + 1}};
        }
      } else {
        st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                  {Variant25::Plain{reloc}}),
                 out_ids);
        rule = "subdivide-arc";
        params = {{"m", m}, {"s", reloc + 1}};
        chord_pending = have_next;
      }
    } else {
      if (have_next && next_from_pos >= 0 && next_to_pos >= 0) {
        if (next_from_pos == m - 1) {
          st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                    {Variant25::SplitTerminal{next_to_pos, std::nullopt}},
                                    &eps),
                   out_ids);
          rule = "subdivide-arc-terminal";
          params = {{"m", m}, {"t", next_to_pos + 1}};
        } else {
          st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                    {Variant25::Chord{next_from_pos, next_to_pos,
                                                      std::nullopt}},
                                    &eps),
                   out_ids);
          rule = "subdivide-arc-chord";
          params = {{"m", m}, {"s", next_from_pos + 1}, {"t", next_to_pos + 1}};
        }
      } else {
        st.adopt(expand_component(st.arranged(input), m, j, k_param,
                                  {Variant25::Plain{0}}),
                 out_ids);
        rule = "subdivide-arc";
        params = {{"m", m}, {"s", 1}};
        chord_pending = have_next;
      }
    }
    st.verify("ear stage");

    std::vector<std::tuple<Eigen::Index, Eigen::Index, Sign, double>> added;
    if (chord_pending) {
      // When the next stage relocates the red again, its hypothesis sum is
      // chord*v(from) + red*v(src); the chord must be big enough to keep it
      // positive, so the perturbation magnitude may grow past 1.
      std::function<bool(const EigenTriple&)> ok;
      if (sp.next_moves_red && red_src >= 0) {
        const int nf = sp.next_from, nt = sp.next_to, rs = red_src;
        const std::vector<int> ids_after = st.ids;
        ok = [ids_after, nf, nt, rs](const EigenTriple& cand) {
          auto pos = [&](int id) {
            return std::lower_bound(ids_after.begin(), ids_after.end(), id) -
                   ids_after.begin();
          };
          double s = cand.M(pos(nf), pos(nt)) * cand.v(pos(nf)) +
                     cand.M(pos(rs), pos(nt)) * cand.v(pos(rs));
          return s > 0.0;
        };
      }
      double ce = lift_entries({{sp.next_from, sp.next_to, Sign::Plus}}, ok);
      added.emplace_back(st.pos(sp.next_from), st.pos(sp.next_to), Sign::Plus, ce);
    }
    record(rule, params, eps, added);
  }

  // ---- step 3: attach the next quotient layer ----------------------------

  void attach_layer(size_t ear_index, int epos_start) {
    const auto& ear = ns0.ears[ear_index];
    const int g = static_cast<int>(ear.path.size());
    auto red = [&](int ci, int cj) { return red_of.at({ci, cj}); };
    const int p0 = red(ear.from, ear.path.front()).first;
    const int q0 = red(ear.path.back(), ear.to).second;

    std::vector<std::tuple<Eigen::Index, Eigen::Index, Sign, double>> added;
    const Sign bridge = Y.at(p0, q0);
    if (bridge == Sign::Minus)
      throw EngineInvariantBroken("red arc between attachment endpoints");
    bool subdivide_negative = bridge == Sign::Zero;
    if (subdivide_negative) {
      double ce = lift_entries({{p0, q0, Sign::Minus}});
      added.emplace_back(0, 0, Sign::Minus, ce);  // positions fixed up below
    }

    std::vector<int> input{p0};
    {
      auto rest = st.others({p0});
      input.insert(input.end(), rest.begin(), rest.end());
    }
    const Eigen::Index j = std::find(input.begin(), input.end(), q0) - input.begin();
    std::vector<int> out_ids;
    for (int i = 0; i < g; ++i) out_ids.push_back(nY + epos_start + i);
    out_ids.insert(out_ids.end(), input.begin(), input.end());

    std::string rule;
    if (subdivide_negative) {
      st.adopt(attach_cycle_negative(st.arranged(input), j, g), out_ids);
      rule = "attach-cycle-negative";
    } else {
      st.adopt(attach_cycle_positive(st.arranged(input), j, g), out_ids);
      rule = "attach-cycle-positive";
    }
    st.verify("layer attach");
    if (!added.empty()) {
      double ce = std::get<3>(added[0]);
      added[0] = {st.pos(p0), st.pos(q0), Sign::Minus, ce};
    }
    record(rule, {{"k", g}, {"j", j + 1}}, 0.0, added);
  }

  // ---- driver -------------------------------------------------------------

  std::pair<EigenTriple, ConstructionTrace> run() {
    analyze();
    base();
    for (int e = 0; e < m1; ++e) expand(e);
    int epos = m1;
    for (size_t t = 0; t < ns0.ears.size(); ++t) {
      attach_layer(t, epos);
      const int g = static_cast<int>(ns0.ears[t].path.size());
      for (int i = 0; i < g; ++i) expand(epos + i);
      epos += g;
    }
    for (int i = 0; i < nY; ++i)
      if (!st.has(i)) throw EngineInvariantBroken("vertex never materialized");
    if (static_cast<int>(st.ids.size()) != nY)
      throw EngineInvariantBroken("quotient vertices left over");
    if (sign_of(st.M, 0.0) != Y)
      throw EngineInvariantBroken("final pattern does not match the target");
    st.verify("final");
    return {st.triple(), trace};
  }
};

}  // namespace

std::pair<EigenTriple, ConstructionTrace> realize_case1(
    const SignPattern& y, const std::vector<std::string>* labels) {
  Engine engine(y, labels);
  return engine.run();
}

Realization realize(const SignPattern& a) {
  if (!hypothesis_holds(a))
    throw HypothesisFails(is_ap_irreducible(a.negated())
                              ? "pattern fails the hypothesis, but its negation is AP-irreducible"
                              : "pattern fails the hypothesis");
  const SignPattern x = minimal_ap_subpattern(a);
  auto [y, smap] = split_positive_diagonals(x);

  std::vector<std::string> ylabels(y.order());
  for (Eigen::Index i = 0; i < x.order(); ++i) {
    auto [fst, snd] = smap.image[i];
    if (snd < 0) {
      ylabels[fst] = std::to_string(i + 1);
    } else {
      ylabels[fst] = std::to_string(i + 1) + "'";
      ylabels[snd] = std::to_string(i + 1) + "''";
    }
  }

  auto [triple, trace] = realize_case1(y, &ylabels);

  // Contract every split pair back (pair permuted to the leading block).
  State st;
  st.ids.resize(y.order());
  std::iota(st.ids.begin(), st.ids.end(), 0);
  st.M = triple.M;
  st.u = triple.u;
  st.v = triple.v;
  st.lambda = triple.lambda;

  std::vector<std::string> xlabels(y.order());
  for (Eigen::Index i = 0; i < y.order(); ++i) xlabels[i] = ylabels[i];

  for (Eigen::Index i = 0; i < x.order(); ++i) {
    auto [ia, ib] = smap.image[i];
    if (ib < 0) continue;
    // Remark guard: the contracted corner stays positive when the second
    // row's off-pair entries are all nonpositive.
    const Eigen::Index rb = st.pos(static_cast<int>(ib));
    for (Eigen::Index c = 0; c < st.M.cols(); ++c) {
      if (c == st.pos(static_cast<int>(ia)) || c == rb) continue;
      if (st.M(rb, c) > 0.0)
        throw EngineInvariantBroken("split pair row has a positive off-pair entry");
    }
    std::vector<int> input{static_cast<int>(ia), static_cast<int>(ib)};
    auto rest = st.others({static_cast<int>(ia), static_cast<int>(ib)});
    input.insert(input.end(), rest.begin(), rest.end());
    EigenTriple contracted = contract_pair(st.arranged(input));
    std::vector<int> out_ids{static_cast<int>(ia)};
    out_ids.insert(out_ids.end(), rest.begin(), rest.end());
    st.adopt(contracted, out_ids);
    st.verify("contraction");
    xlabels[ia] = std::to_string(i + 1);

    TraceStep step;
    step.rule = "contract-pair";
    step.params = {{"index", i + 1}};
    step.pattern = sign_of(st.M, 0.0);
    for (int id : st.ids) step.labels.push_back(xlabels[id]);
    EigenTriple t = st.triple();
    step.right_residual = t.right_residual();
    step.left_residual = t.left_residual();
    trace.push_back(std::move(step));
  }

  if (sign_of(st.M, 0.0) != x)
    throw EngineInvariantBroken("contracted pattern does not match the minimal subpattern");

  auto [lifted, lift_eps] = perturb_to_superpattern(st.triple(), a);
  if (lift_eps > 0.0) {
    TraceStep step;
    step.rule = "superpattern-lift";
    step.epsilon = lift_eps;
    for (Eigen::Index i = 0; i < a.order(); ++i)
      for (Eigen::Index j = 0; j < a.order(); ++j)
        if (x.at(i, j) == Sign::Zero && a.at(i, j) != Sign::Zero)
          step.added.emplace_back(i, j, a.at(i, j), lift_eps);
    step.pattern = sign_of(lifted.M, 0.0);
    for (Eigen::Index i = 0; i < a.order(); ++i)
      step.labels.push_back(std::to_string(i + 1));
    step.right_residual = lifted.right_residual();
    step.left_residual = lifted.left_residual();
    trace.push_back(std::move(step));
  }

  if (sign_of(lifted.M, 0.0) != a)
    throw EngineInvariantBroken("realized matrix leaves the qualitative class");

  Realization out;
  out.pattern = a;
  out.matrix = lifted.M;
  out.lambda = lifted.lambda;
  out.u = lifted.u;
  out.v = lifted.v;
  out.witness = witness_polynomial(lifted.M, lifted.lambda);
  if (!(evaluate(out.witness, out.matrix).minCoeff() > 0.0))
    throw EngineInvariantBroken("witness evaluation is not entrywise positive");
  out.trace = std::move(trace);
  return out;
}

}  // namespace algpos
