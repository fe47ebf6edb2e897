// Command-line front end: aggregate linear Diophantine systems into
// equivalent single equations (or the minimum-size row set), count solutions
// of the aggregated knapsack, and verify aggregations by brute force.
//
// Exit codes: 0 ok, 1 bad input, 2 infeasible by lattice membership,
// 3 unsupported regime, 4 enumeration window too large.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dagg/dagg.hpp"

namespace {

using dagg::json;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitWindow = 4;

unsigned long enum_cap() {
  if (const char* env = std::getenv("DAGG_ENUM_CAP")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && cap > 0) return cap;
    std::cerr << "warning: ignoring malformed DAGG_ENUM_CAP\n";
  }
  return dagg::kDefaultEnumCap;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

dagg::RatMatrix parse_forced_T(const std::string& text, std::size_t m) {
  auto rows = split(text, ';');
  dagg::RatMatrix T(rows.size(), m);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto cells = split(rows[i], ',');
    if (cells.size() != m)
      throw dagg::ParseError("--force-T: expected " + std::to_string(m) +
                             " entries per row");
    for (std::size_t j = 0; j < m; ++j) T.at(i, j) = dagg::parse_rat(cells[j]);
  }
  return T;
}

dagg::AggregationMatrix route_strong(const dagg::DiophantineSystem& sys,
                                     bool explicit_form) {
  if (sys.u)
    return explicit_form ? dagg::aggregate_bounded_explicit(sys)
                         : dagg::aggregate_bounded(sys);
  if (explicit_form)
    throw dagg::ParseError("--explicit requires an upper-bounded system");
  return dagg::aggregate_general(sys);
}

int cmd_aggregate(const std::string& file, const std::string& mode,
                  bool explicit_form) {
  dagg::DiophantineSystem sys = dagg::load_system(file);
  try {
    dagg::AggregationMatrix agg = mode == "weak"
                                      ? dagg::aggregate_weak(sys)
                                      : route_strong(sys, explicit_form);
    emit(dagg::aggregation_to_json(agg));
    return kExitOk;
  } catch (const dagg::InfeasibleByLattice&) {
    json report;
    report["verdict"] = "infeasible";
    emit(report);
    return kExitInfeasible;
  }
}

json count_report(const dagg::DiophantineSystem& sys,
                  const dagg::AggregationMatrix& agg,
                  const std::string& method) {
  json report;
  dagg::KnapsackBuild built =
      dagg::build_knapsack(agg.T, sys.A, sys.b, sys.u);
  if (built.negative_rhs) {
    report["count"] = "0";
    report["feasible"] = false;
    report["method"] = method;
    report["error_bound"] = nullptr;
    return report;
  }
  dagg::BigInt count;
  double error_bound = 0.0;
  bool spectral_ran = false;
  if (method == "dp" || method == "both") {
    count = dagg::count_system(sys, agg).count;
  }
  if (method == "spectral" || method == "both") {
    dagg::CountResult sp = built.eq.u
                               ? dagg::count_spectral_bounded(built.eq)
                               : dagg::count_spectral_unbounded(built.eq);
    if (method == "both" && sp.count != count)
      throw dagg::Error("count: spectral and dp disagree");
    count = sp.count;
    error_bound = sp.spectral_error_bound;
    spectral_ran = true;
  }
  report["count"] = count.get_str();
  report["feasible"] = count > 0;
  report["method"] = method;
  report["error_bound"] = spectral_ran ? json(error_bound) : json(nullptr);
  return report;
}

int cmd_count(const std::string& file, const std::string& method) {
  dagg::DiophantineSystem sys = dagg::load_system(file);
  if (sys.u) {
    try {
      dagg::AggregationMatrix agg = dagg::aggregate_bounded(sys);
      emit(count_report(sys, agg, method));
      return kExitOk;
    } catch (const dagg::InfeasibleByLattice&) {
      json report;
      report["count"] = "0";
      report["feasible"] = false;
      report["method"] = method;
      report["error_bound"] = nullptr;
      emit(report);
      return kExitOk;
    }
  }
  dagg::ConeDecomposition dec = dagg::decompose_cone(sys.A);
  if (dec.r == 0) {
    dagg::AggregationMatrix agg = dagg::aggregate_pointed(sys);
    emit(count_report(sys, agg, method));
    return kExitOk;
  }
  // No size-one strong aggregation exists; report feasibility through the
  // weak (boxed) aggregation instead of a count.
  json report;
  report["count"] = nullptr;
  report["method"] = "dp";
  report["error_bound"] = nullptr;
  try {
    dagg::AggregationMatrix weak = dagg::aggregate_weak(sys);
    dagg::KnapsackBuild built = dagg::build_knapsack(
        weak.T, sys.A, sys.b, weak.introduced_bounds);
    report["feasible"] =
        !built.negative_rhs && dagg::count_dp(built.eq).count > 0;
  } catch (const dagg::InfeasibleByLattice&) {
    report["feasible"] = false;
  }
  emit(report);
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& window_text,
               const std::string& forced_T) {
  dagg::DiophantineSystem sys = dagg::load_system(file);
  const std::size_t m = sys.A.rows(), n = sys.A.cols();

  dagg::AggregationMatrix agg;
  if (!forced_T.empty()) {
    agg.T = parse_forced_T(forced_T, m);
    agg.kind = dagg::AggregationKind::Strong;
    agg.size = agg.T.rows();
  } else if (sys.u) {
    agg = dagg::aggregate_bounded(sys);
  } else {
    agg = dagg::aggregate_general(sys);
  }

  dagg::IntVec window;
  if (!window_text.empty()) {
    auto cells = split(window_text, ',');
    if (cells.size() == 1) {
      window.assign(n, dagg::BigInt(cells[0]));
    } else if (cells.size() == n) {
      for (const auto& c : cells) window.emplace_back(c);
    } else {
      throw dagg::ParseError("--window: expected 1 or n values");
    }
  } else if (sys.u) {
    window = *sys.u;
  } else {
    // Default window: per-coordinate bound T.b / (T.A)_j when the single
    // aggregated row has all-positive coefficients, else a small box.
    window.assign(n, dagg::BigInt(4));
    if (agg.size == 1) {
      dagg::RatVec ta = dagg::multiply(agg.T, dagg::to_rational(sys.A)).row(0);
      dagg::RatVec tb = dagg::multiply(agg.T, dagg::to_rational(sys.b));
      bool positive = true;
      for (const auto& c : ta) positive = positive && c > 0;
      if (positive) {
        for (std::size_t j = 0; j < n; ++j) {
          dagg::BigInt w = tb[0] < 0 ? dagg::BigInt(0)
                                     : dagg::rat_floor(tb[0] / ta[j]);
          window[j] = w < 0 ? dagg::BigInt(0) : w;
        }
      }
    }
  }

  dagg::CertifyResult res = dagg::certify_strong(sys, agg, window, enum_cap());
  json report;
  report["equal"] = res.equal;
  if (res.counterexample) {
    json cx = json::array();
    for (const auto& x : *res.counterexample) cx.push_back(x.get_str());
    report["counterexample"] = cx;
  } else {
    report["counterexample"] = nullptr;
  }
  emit(report);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Aggregation of linear Diophantine systems Ax=b, x >= 0 "
               "integer: equivalent knapsack forms, solution counts, and "
               "brute-force verification"};
  app.require_subcommand(1);

  std::string file, mode = "strong", method = "dp", window_text, forced_T;
  bool explicit_form = false;

  auto* agg_cmd = app.add_subcommand("aggregate", "construct an aggregation");
  agg_cmd->add_option("file", file, "system JSON file")->required();
  agg_cmd->add_option("--mode", mode, "strong|weak")
      ->check(CLI::IsMember({"strong", "weak"}));
  agg_cmd->add_flag("--explicit", explicit_form,
                    "closed-form bounded aggregation (1/q_1,...,-1)");

  auto* count_cmd = app.add_subcommand("count", "count solutions");
  count_cmd->add_option("file", file, "system JSON file")->required();
  count_cmd->add_option("--method", method, "dp|spectral|both")
      ->check(CLI::IsMember({"dp", "spectral", "both"}));

  auto* verify_cmd =
      app.add_subcommand("verify", "aggregate, then certify by enumeration");
  verify_cmd->add_option("file", file, "system JSON file")->required();
  verify_cmd->add_option("--window", window_text,
                         "enumeration box: N or N,N,...");
  verify_cmd->add_option("--force-T", forced_T,
                         "use this T instead of the pipeline output "
                         "(rows ';'-separated, entries ','-separated)");

  try {
    app.parse(argc, argv);
    if (agg_cmd->parsed()) return cmd_aggregate(file, mode, explicit_form);
    if (count_cmd->parsed()) return cmd_count(file, method);
    return cmd_verify(file, window_text, forced_T);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const dagg::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const dagg::UnsupportedRegime& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const dagg::WindowTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWindow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
