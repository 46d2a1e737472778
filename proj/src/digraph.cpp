#include "algpos/digraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace algpos {

Digraph::Digraph(int n, const std::vector<Arc>& arcs) : out_(n), in_(n) {
  for (auto [a, b] : arcs) add_arc(a, b);
}

bool Digraph::has_arc(int from, int to) const {
  const auto& o = out_[from];
  return std::binary_search(o.begin(), o.end(), to);
}

void Digraph::add_arc(int from, int to) {
  if (has_arc(from, to)) return;
  auto& o = out_[from];
  o.insert(std::lower_bound(o.begin(), o.end(), to), to);
  auto& i = in_[to];
  i.insert(std::lower_bound(i.begin(), i.end(), from), from);
  ++arc_count_;
}

void Digraph::remove_arc(int from, int to) {
  auto& o = out_[from];
  auto it = std::lower_bound(o.begin(), o.end(), to);
  if (it == o.end() || *it != to) return;
  o.erase(it);
  auto& i = in_[to];
  i.erase(std::lower_bound(i.begin(), i.end(), from));
  --arc_count_;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> r;
  r.reserve(arc_count_);
  for (int v = 0; v < vertex_count(); ++v)
    for (int w : out_[v]) r.emplace_back(v, w);
  return r;
}

bool Digraph::has_loop() const {
  for (int v = 0; v < vertex_count(); ++v)
    if (has_arc(v, v)) return true;
  return false;
}

Digraph Digraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> pos(vertex_count(), -1);
  for (size_t i = 0; i < vertices.size(); ++i) pos[vertices[i]] = static_cast<int>(i);
  Digraph g(static_cast<int>(vertices.size()));
  for (size_t i = 0; i < vertices.size(); ++i)
    for (int w : out_[vertices[i]])
      if (pos[w] >= 0) g.add_arc(static_cast<int>(i), pos[w]);
  return g;
}

Digraph digraph_of(const SignPattern& a) {
  const int n = static_cast<int>(a.order());
  Digraph d(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a.at(i, j) != Sign::Zero) d.add_arc(i, j);
  return d;
}

namespace {

// Iterative Tarjan; neighbor order is ascending so component discovery
// is deterministic.
struct TarjanState {
  const Digraph& d;
  std::vector<int> index, low, comp;
  std::vector<bool> on_stack;
  std::vector<int> stack;
  int counter = 0, ncomp = 0;

  explicit TarjanState(const Digraph& g)
      : d(g),
        index(g.vertex_count(), -1),
        low(g.vertex_count(), 0),
        comp(g.vertex_count(), -1),
        on_stack(g.vertex_count(), false) {}

  void run(int root) {
    struct Frame {
      int v;
      size_t next;
    };
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& nb = d.out(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == index[v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = ncomp;
            if (w == v) break;
          }
          ++ncomp;
        }
      }
    }
  }
};

}  // namespace

std::vector<std::vector<int>> strongly_connected_components(const Digraph& d) {
  TarjanState t(d);
  for (int v = 0; v < d.vertex_count(); ++v)
    if (t.index[v] < 0) t.run(v);
  std::vector<std::vector<int>> comps(t.ncomp);
  for (int v = 0; v < d.vertex_count(); ++v) comps[t.comp[v]].push_back(v);
  for (auto& c : comps) std::sort(c.begin(), c.end());
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return comps;
}

bool is_strongly_connected(const Digraph& d) {
  if (d.vertex_count() == 0) return false;
  if (d.vertex_count() == 1) return true;
  return strongly_connected_components(d).size() == 1;
}

bool is_minimally_strongly_connected(const Digraph& d) {
  if (!is_strongly_connected(d)) return false;
  Digraph g = d;
  for (auto [a, b] : d.arcs()) {
    g.remove_arc(a, b);
    bool still = is_strongly_connected(g);
    g.add_arc(a, b);
    if (still) return false;
  }
  return true;
}

std::vector<int> shortest_path_to_set(const Digraph& d, const std::vector<int>& sources,
                                      const std::vector<bool>& is_target) {
  const int n = d.vertex_count();
  const int INF = std::numeric_limits<int>::max();
  // Distance from each vertex to the target set, walking forward but with
  // internal vertices banned from the target set: BFS on the reverse graph
  // seeded at the targets.
  std::vector<int> dist(n, INF);
  std::queue<int> q;
  for (int v = 0; v < n; ++v)
    if (is_target[v]) {
      dist[v] = 0;
      q.push(v);
    }
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : d.in(v)) {
      if (is_target[w]) continue;  // paths may not pass through a target
      if (dist[w] == INF) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  auto dist_of = [&](int s) { return is_target[s] ? 0 : dist[s]; };
  int best = -1;
  for (int s : sources) {
    if (dist_of(s) == INF) continue;
    if (best < 0 || dist_of(s) < dist_of(best) || (dist_of(s) == dist_of(best) && s < best))
      best = s;
  }
  if (best < 0) return {};
  // Greedy reconstruction: smallest next vertex that decreases distance.
  std::vector<int> path{best};
  int cur = best;
  while (!is_target[cur]) {
    int next = -1;
    for (int w : d.out(cur)) {
      int dw = is_target[w] ? 0 : dist[w];
      if (dw != std::numeric_limits<int>::max() && dw == dist[cur] - 1) {
        next = w;
        break;  // out() is sorted ascending
      }
    }
    path.push_back(next);
    cur = next;
  }
  return path;
}

std::vector<int> shortest_cycle_through(const Digraph& d, int v) {
  const int n = d.vertex_count();
  if (d.has_arc(v, v)) return {v};
  std::vector<bool> target(n, false);
  target[v] = true;
  std::vector<int> best;
  for (int w : d.out(v)) {
    std::vector<int> back = shortest_path_to_set(d, {w}, target);
    if (back.empty()) continue;
    std::vector<int> cyc{v};
    cyc.insert(cyc.end(), back.begin(), back.end() - 1);  // drop the final v
    if (best.empty() || cyc.size() < best.size() ||
        (cyc.size() == best.size() && cyc < best))
      best = cyc;
  }
  return best;
}

}  // namespace algpos
