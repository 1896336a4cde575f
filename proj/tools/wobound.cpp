// wobound: upper bounds on the number of rational points of curves over F_q.
//
// Output is tab-separated with a header row; --json prints an array of
// objects where every exact value is a string ("-1723/36").
//
// Exit codes: 0 success, 1 method/range error, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wob/wob.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace wob;

struct Options {
  std::int64_t q = 0;
  std::int64_t g = 0;
  std::string method = "best";
  std::string matrix;
  std::int64_t qmax = 100;
  std::int64_t gmax = 50;
  std::int64_t seq_qmax = 1024;
  bool json = false;
  bool no_check = false;
  bool all = false;
  unsigned precision_bits = 60;
  std::string records;
  SearchBudget budget;
};

std::string render_t(const BoundReport& r) {
  if (const auto* q = std::get_if<Quad>(&r.t1_lower)) return q->str();
  const auto& iv = std::get<RationalInterval>(r.t1_lower);
  return "[" + iv.lo.str() + ", " + iv.hi.str() + "]";
}

std::string approx_str(const verify::Real& v, int digits = 12) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

void emit(const Options& opt, const std::vector<std::string>& cols, const std::vector<json>& rows) {
  if (opt.json) {
    std::cout << json(rows).dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "\t" : "") << cols[i];
  std::cout << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const json& v = row.at(cols[i]);
      std::cout << (i ? "\t" : "") << (v.is_string() ? v.get<std::string>() : v.dump());
    }
    std::cout << "\n";
  }
}

json report_json(const BoundReport& r, std::string_view tag) {
  return json{{"method", std::string(tag)},   {"q", r.q},
              {"g", r.g},                     {"t1_lower", render_t(r)},
              {"n1_upper", r.n1_upper.str()}, {"valid", r.in_validity_range},
              {"notes", r.notes}};
}

std::vector<Integer> parse_int_list(const std::string& s) {
  std::vector<Integer> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(detail::parse_integer(item));
  return out;
}

// Every method applicable at (q, g); order-3 baseline counts only from g3 on.
std::vector<BoundReport> applicable_reports(const CurveParams& p, const Options& opt) {
  std::vector<BoundReport> out{weil_report(p), weil_serre_report(p)};
  if (in_ihara_range(p)) {
    out.push_back(ihara_report(p));
    out.push_back(ihara_serre_report(p));
  }
  if (order3_optimal(p)) out.push_back(wo3_report(p, opt.precision_bits));
  try {
    out.push_back(wo3_serre_report(p, opt.budget, opt.precision_bits));
  } catch (const RangeError&) {
    // no integral candidate at this (q, g)
  }
  return out;
}

BoundReport single_report(const CurveParams& p, const Options& opt) {
  const std::string& m = opt.method;
  if (m == "weil") return weil_report(p);
  if (m == "weil-serre") return weil_serre_report(p);
  if (m == "ihara") return ihara_report(p);
  if (m == "ihara-serre") return ihara_serre_report(p);
  if (m == "wo3") return wo3_report(p, opt.precision_bits);
  if (m == "wo3-serre") return wo3_serre_report(p, opt.budget, opt.precision_bits);
  if (m == "a2") {
    const auto v = parse_int_list(opt.matrix);
    if (v.size() != 3) throw InvalidParams("--matrix for a2 is d,2a,b");
    return bound_a2_report(p, RefineMatrix2::make(v[0], v[1], v[2]));
  }
  if (m == "a3") {
    const auto v = parse_int_list(opt.matrix);
    if (v.size() != 4) throw InvalidParams("--matrix for a3 is d,2a,b_x,b_y (b = b_x + b_y sqrt(q))");
    return a3_report(p, RefineMatrix3::make(p.q, v[0], v[1], v[2], v[3]), Method::WO3Serre);
  }
  throw InvalidParams("unknown method '" + m + "'");
}

int cmd_bound(const Options& opt) {
  const auto p = CurveParams::make(opt.q, opt.g, !opt.no_check);
  json row;
  if (opt.method == "best") {
    const auto reports = applicable_reports(p, opt);
    const BoundReport* best = &reports.front();
    for (const auto& r : reports)
      if (r.n1_upper < best->n1_upper) best = &r;
    row = report_json(*best, "best");
    row["notes"] = "via " + std::string(method_tag(best->method)) + (best->notes.empty() ? "" : "; " + best->notes);
  } else {
    const auto r = single_report(p, opt);
    row = report_json(r, opt.method == "a3" ? "a3" : method_tag(r.method));
  }
  emit(opt, {"method", "q", "g", "t1_lower", "n1_upper", "valid", "notes"}, {row});
  return 0;
}

json entry_json(const TableEntry& e, bool with_status) {
  json j{{"q", e.q},
         {"g", e.g},
         {"ihara_n", e.ihara_n.str()},
         {"ihara_serre_n", e.ihara_serre_n.str()},
         {"improved", e.improved}};
  if (with_status) j["record_status"] = std::string(record_status_tag(e.record_status));
  return j;
}

int cmd_table1(const Options& opt) {
  std::vector<json> rows;
  for (const auto& e : table1(opt.qmax, opt.gmax, opt.all)) rows.push_back(entry_json(e, false));
  emit(opt, {"q", "g", "ihara_n", "ihara_serre_n", "improved"}, rows);
  return 0;
}

int cmd_rec3(const Options& opt) {
  std::vector<json> rows;
  for (const auto& r : rec3_table())
    rows.push_back(json{{"q", r.q}, {"g", r.g}, {"t1_lower", render_t(r)}, {"n1_upper", r.n1_upper.str()},
                        {"matrix", r.notes}});
  emit(opt, {"q", "g", "t1_lower", "n1_upper", "matrix"}, rows);
  return 0;
}

int cmd_scan_a3(const Options& opt) {
  const auto p = CurveParams::make(opt.q, opt.g, !opt.no_check);
  const auto base = wo3_report(p, opt.precision_bits);
  const auto r = search_A3(p, opt.budget, precision_from_bits(opt.precision_bits));
  json row{{"q", p.q},
           {"g", p.g},
           {"t1_lower", r.t1_lower.str()},
           {"n1_upper", n1_upper_from(p, r.t1_lower).str()},
           {"wo3_n1_upper", base.n1_upper.str()},
           {"d", r.A.d().str()},
           {"two_a", r.A.two_a().str()},
           {"b_x", r.A.b_x().str()},
           {"b_y", r.A.b_y().str()},
           {"candidates", r.candidates}};
  emit(opt, {"q", "g", "t1_lower", "n1_upper", "wo3_n1_upper", "d", "two_a", "b_x", "b_y", "candidates"}, {row});
  return 0;
}

int cmd_seq4q(const Options& opt) {
  std::vector<json> rows;
  for (const auto q : prime_powers_up_to(opt.seq_qmax)) {
    if (q < 34) continue;
    const Quad gq = seq_gain_4q(q);
    const Rational cap = seq_gain_4q_cap(q);
    rows.push_back(json{{"q", q},
                        {"gain", gq.str()},
                        {"cap", cap.str()},
                        {"gain_approx", approx_str(verify::to_real(gq))},
                        {"sqrt_q_over_3", approx_str(boost::multiprecision::sqrt(verify::Real(q)) / 3)}});
  }
  emit(opt, {"q", "gain", "cap"}, rows);
  return 0;
}

int cmd_asym(const Options& opt) {
  if (opt.q < 2) throw InvalidParams("--q is required");
  if (!opt.no_check && !is_prime_power(opt.q)) throw InvalidParams("q = " + std::to_string(opt.q) + " is not a prime power");
  const auto [lo, hi] = table_genus_window(opt.q);
  (void)hi;
  std::vector<json> rows;
  for (std::int64_t g = lo; g <= opt.gmax; ++g) {
    const Quad v = gain(CurveParams{opt.q, g});
    rows.push_back(json{{"g", g}, {"gain", v.str()}, {"gain_approx", approx_str(verify::to_real(v))}});
  }
  emit(opt, {"g", "gain", "gain_approx"}, rows);
  return 0;
}

int cmd_compare(const Options& opt) {
  if (opt.records.empty()) throw InvalidParams("--records <path> is required");
  std::ifstream in(opt.records);
  if (!in) throw InvalidParams("cannot read " + opt.records);
  const auto records = parse_records(in);
  auto entries = table1(opt.qmax, opt.gmax, opt.all);
  for (const auto& w : annotate_records(entries, records))
    std::cerr << "WARNING (q=" << w.q << ", g=" << w.g << "): " << w.message << "\n";
  std::vector<json> rows;
  for (const auto& e : entries) rows.push_back(entry_json(e, true));
  emit(opt, {"q", "g", "ihara_n", "ihara_serre_n", "improved", "record_status"}, rows);
  return 0;
}

int cmd_selftest(const Options& opt) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "\t" << name << "\n";
    failures += ok ? 0 : 1;
  };
  (void)opt;
  const auto rec = rec3_table();
  const char* expected_t[] = {"-1723/36", "-12348/179", "-23352/193", "-33580/221"};
  const int expected_n[] = {53, 76, 129, 163};
  for (std::size_t i = 0; i < rec.size(); ++i)
    check("rec3 q=" + std::to_string(rec[i].q), render_t(rec[i]) == expected_t[i] && rec[i].n1_upper == expected_n[i]);
  check("ihara q=3 g=1", ihara_report(CurveParams::make(3, 1)).n1_upper == 7);
  check("ihara-serre q=5 g=10", ihara_serre_report(CurveParams::make(5, 10)).n1_upper == 36);
  check("gain(64, 256) = 8/3", gain(CurveParams::make(64, 256)) == Quad(Rational(8, 3)));
  check("wo3 q=5 g=19", wo3_report(CurveParams::make(5, 19)).n1_upper == 54);
  const auto cut = ihara_serre_matrix(CurveParams::make(5, 19)).cut(5);
  check("certifier accepts the q=5 g=19 cut", verify::check_affine_ineq(5, cut.coeffs()).holds);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper bounds on the number of rational points of curves over finite fields"};
  app.require_subcommand(1);
  Options opt;

  auto add_qg = [&](CLI::App* sub, bool required) {
    auto* q = sub->add_option("--q", opt.q, "field size (a prime power)");
    auto* g = sub->add_option("--g", opt.g, "genus");
    if (required) {
      q->required();
      g->required();
    }
    sub->add_flag("--no-check", opt.no_check, "skip the prime-power check on q");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--precision-bits", opt.precision_bits, "order-3 root enclosure width 2^-bits")
        ->check(CLI::Range(8u, 4096u));
    sub->add_option("--dmax", opt.budget.d_max, "order-3 search: largest d")->check(CLI::PositiveNumber);
    sub->add_option("--scales", opt.budget.scale_grid, "order-3 search: scale grid size")->check(CLI::PositiveNumber);
    sub->add_option("--neighborhood", opt.budget.neighborhood, "order-3 search: rounding neighborhood")
        ->check(CLI::PositiveNumber);
  };
  app.add_flag("--json", opt.json, "JSON array output");

  auto* bound = app.add_subcommand("bound", "bound on N1 for a single (q, g)");
  add_qg(bound, true);
  add_budget(bound);
  bound->add_option("--method", opt.method, "weil|weil-serre|ihara|ihara-serre|a2|a3|wo3|wo3-serre|best")
      ->check(CLI::IsMember({"weil", "weil-serre", "ihara", "ihara-serre", "a2", "a3", "wo3", "wo3-serre", "best"}));
  bound->add_option("--matrix", opt.matrix, "a2: d,2a,b   a3: d,2a,b_x,b_y");

  auto* t1 = app.add_subcommand("table1", "pairs where Ihara-Serre improves on Ihara");
  t1->add_option("--qmax", opt.qmax);
  t1->add_option("--gmax", opt.gmax);
  t1->add_flag("--all", opt.all, "emit every scanned pair");

  app.add_subcommand("rec3", "order-3 record bounds");

  auto* scan = app.add_subcommand("scan-a3", "search an order-3 refinement matrix");
  add_qg(scan, true);
  add_budget(scan);

  auto* seq = app.add_subcommand("seq4q", "gain at g = 4q for prime powers 34 <= q <= qmax");
  seq->add_option("--qmax", opt.seq_qmax, "largest q (default 1024)");

  auto* asym = app.add_subcommand("asym", "gain(g) for g2 <= g <= gmax");
  asym->add_option("--q", opt.q)->required();
  asym->add_option("--gmax", opt.gmax)->required();
  asym->add_flag("--no-check", opt.no_check);

  auto* cmp = app.add_subcommand("compare", "compare against a records CSV");
  cmp->add_option("--records", opt.records)->required();
  cmp->add_option("--qmax", opt.qmax);
  cmp->add_option("--gmax", opt.gmax);
  cmp->add_flag("--all", opt.all, "compare every scanned pair");

  app.add_subcommand("selftest", "quick consistency checks");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", opt.json, "JSON array output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "bound") return cmd_bound(opt);
    if (name == "table1") return cmd_table1(opt);
    if (name == "rec3") return cmd_rec3(opt);
    if (name == "scan-a3") return cmd_scan_a3(opt);
    if (name == "seq4q") return cmd_seq4q(opt);
    if (name == "asym") return cmd_asym(opt);
    if (name == "compare") return cmd_compare(opt);
    if (name == "selftest") return cmd_selftest(opt);
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
