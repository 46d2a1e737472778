#include "algpos/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <sstream>

#include "algpos/errors.hpp"
#include "algpos/oracle.hpp"
#include "algpos/realizer.hpp"
#include "algpos/serialize.hpp"
#include "algpos/structure.hpp"

namespace algpos::cli {

namespace {

SignPattern load_pattern(const std::string& path) {
  return parse_pattern(read_file(path));
}

void emit(const std::string& out_path, const std::string& content, std::ostream& out) {
  if (out_path.empty() || out_path == "-")
    out << content;
  else
    write_file(out_path, content);
}

int cmd_check(const std::string& file, std::ostream& out) {
  SignPattern a = load_pattern(file);
  const bool irr = is_strongly_connected(digraph_of(a));
  const bool ap = is_ap_irreducible(a);
  const bool minimal = ap && is_minimally_ap_irreducible(a);
  const bool b_irr = is_strongly_connected(digraph_of(b_matrix(a)));
  const bool hyp = hypothesis_holds(a);

  out << "order: " << a.order() << "\n";
  out << "irreducible: " << (irr ? "yes" : "no") << "\n";
  out << "AP-irreducible: " << (ap ? "yes" : "no") << "\n";
  out << "minimally AP-irreducible: " << (minimal ? "yes" : "no") << "\n";
  out << "B_A irreducible: " << (b_irr ? "yes" : "no") << "\n";
  Components comps = irreducible_components(positive_part(a));
  out << "components of A_+:";
  for (const auto& part : comps.parts) {
    out << " {";
    for (size_t i = 0; i < part.size(); ++i) out << (i ? "," : "") << part[i] + 1;
    out << "}";
  }
  out << "\n";
  out << "sufficient condition (hypothesis): " << (hyp ? "yes" : "no") << "\n";
  if (!hyp) {
    // Name the first necessary condition that fails, if one does.
    for (Eigen::Index i = 0; i < a.order(); ++i) {
      bool row_plus = false, col_plus = false;
      for (Eigen::Index j = 0; j < a.order(); ++j) {
        row_plus |= a.at(i, j) == Sign::Plus;
        col_plus |= a.at(j, i) == Sign::Plus;
      }
      if (!row_plus) {
        out << "note: row " << i + 1 << " contains no + entry\n";
        break;
      }
      if (!col_plus) {
        out << "note: column " << i + 1 << " contains no + entry\n";
        break;
      }
    }
    if (is_ap_irreducible(a.negated()))
      out << "note: the negated pattern is AP-irreducible\n";
  }
  return hyp ? 0 : 2;
}

int cmd_realize(const std::string& file, const std::string& out_path, std::ostream& out) {
  SignPattern a = load_pattern(file);
  Realization r = realize(a);
  emit(out_path, realization_to_json(r).dump(2) + "\n", out);
  return 0;
}

int cmd_verify(const std::string& file, std::ostream& out) {
  nlohmann::json doc = nlohmann::json::parse(read_file(file));
  Eigen::MatrixXd m = extract_matrix(doc);
  Verdict v = find_eigen_triple(m);
  out << verdict_to_json(v).dump(2) << "\n";
  return v.positive ? 0 : 2;
}

int cmd_witness(const std::string& file, std::ostream& out) {
  nlohmann::json doc = nlohmann::json::parse(read_file(file));
  Eigen::MatrixXd m = extract_matrix(doc);
  auto [verdict, poly] = verify_algebraic_positivity(m);
  if (!verdict.positive || !poly) {
    out << verdict_to_json(verdict).dump(2) << "\n";
    return 2;
  }
  double min_entry = evaluate(*poly, m).minCoeff();
  nlohmann::json j{{"witness", witness_to_json(*poly)},
                   {"min_entry", min_entry},
                   {"lambda", verdict.lambda}};
  out << j.dump(2) << "\n";
  return 0;
}

int cmd_trace(const std::string& file, std::ostream& out) {
  SignPattern a = load_pattern(file);
  Realization r = realize(a);
  int n = 0;
  for (const TraceStep& s : r.trace) {
    out << "step " << ++n << ": " << s.rule;
    for (const auto& [k, v] : s.params) out << " " << k << "=" << v;
    if (s.epsilon > 0.0) out << " epsilon=" << s.epsilon;
    out << "\n";
    for (const auto& [ri, ci, sgn, eps] : s.added)
      out << "  added " << s.labels[ri] << " -> " << s.labels[ci] << " (" << sign_char(sgn)
          << ", epsilon=" << eps << ")\n";
    size_t width = 1;
    for (const auto& lbl : s.labels) width = std::max(width, lbl.size());
    for (Eigen::Index i = 0; i < s.pattern.order(); ++i) {
      out << "  " << std::setw(static_cast<int>(width)) << s.labels[i] << " |";
      for (Eigen::Index j = 0; j < s.pattern.order(); ++j)
        out << " " << sign_char(s.pattern.at(i, j));
      out << "\n";
    }
  }
  out << "lambda: " << r.lambda << "\n";
  return 0;
}

int cmd_oracle(int n, std::uint64_t budget, const std::string& grid_csv, std::uint32_t seed,
               const std::string& out_path, bool as_json, std::ostream& out) {
  std::vector<double> grid;
  std::stringstream ss(grid_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) grid.push_back(std::stod(tok));
  ProbeSummary s = conjecture_probe(n, budget, grid, seed);
  emit(out_path, as_json ? probe_to_json(s).dump(2) + "\n" : format_probe(s), out);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sign pattern algebraic positivity toolkit"};
  app.require_subcommand(1);

  std::string file, doc, out_path;
  int n = 2;
  std::uint64_t budget = 100000;
  std::string grid = "0.5,1,2";
  std::uint32_t seed = 12345;

  auto* check = app.add_subcommand("check", "structural report for a pattern file");
  check->add_option("file", file)->required();

  auto* realize_cmd = app.add_subcommand("realize", "construct a certified matrix");
  realize_cmd->add_option("file", file)->required();
  realize_cmd->add_option("--out", out_path, "output path or - for stdout");

  auto* verify = app.add_subcommand("verify", "verdict for a serialized matrix");
  verify->add_option("doc", doc)->required();

  auto* witness = app.add_subcommand("witness", "witness polynomial for a matrix");
  witness->add_option("doc", doc)->required();

  auto* trace = app.add_subcommand("trace", "human-readable construction steps");
  trace->add_option("file", file)->required();

  auto* oracle = app.add_subcommand("oracle", "exhaustive small-order probe");
  oracle->add_option("--n", n)->check(CLI::Range(1, 3));
  oracle->add_option("--budget", budget);
  oracle->add_option("--grid", grid, "comma-separated positive magnitudes");
  oracle->add_option("--seed", seed);
  oracle->add_option("--out", out_path);
  bool oracle_json = false;
  oracle->add_flag("--json", oracle_json, "emit the structured document instead of text");

  std::vector<std::string> argv_store = args;
  std::vector<const char*> argv{"algpos"};
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (app.got_subcommand(check)) return cmd_check(file, out);
    if (app.got_subcommand(realize_cmd)) return cmd_realize(file, out_path, out);
    if (app.got_subcommand(verify)) return cmd_verify(doc, out);
    if (app.got_subcommand(witness)) return cmd_witness(doc, out);
    if (app.got_subcommand(trace)) return cmd_trace(file, out);
    if (app.got_subcommand(oracle)) return cmd_oracle(n, budget, grid, seed, out_path, oracle_json, out);
  } catch (const EngineInvariantBroken& e) {
    err << "engine invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const ExtractionFailed& e) {
    err << "engine invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const HypothesisFails& e) {
    err << "negative verdict: " << e.what() << "\n";
    return 2;
  } catch (const NotApIrreducible& e) {
    err << "negative verdict: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionViolated& e) {
    err << "negative verdict: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace algpos::cli
