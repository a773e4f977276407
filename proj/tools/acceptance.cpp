// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
//
// The exit code is 0 once every criterion was evaluated, whatever the outcome, because some
// published numbers are known not to reproduce (see README). With --strict the exit code is 1
// when any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "nambu/claims.hpp"

using namespace nambu;

namespace {

struct Line {
  bool pass = false;
  std::string detail;
};

std::string field(const Json& j, const char* key) {
  if (!j.contains(key)) return "?";
  const Json& v = j.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

Line criterion_1() {
  const ClaimResult d3 = claim_descend("sunflower", 3, true);
  const ClaimResult d4 = claim_descend("sunflower", 4, true);
  const Json& r3 = d3.certificate["results"];
  const Json& r4 = d4.certificate["results"];
  std::ostringstream s;
  s << "3D " << field(r3, "raw_count") << " raw, published items present " << field(r3, "published_items_present")
    << "/41 (derived classes " << field(r3, "canonical_count") << "); 4D " << field(r4, "raw_count")
    << " raw, multiset match " << field(r4, "matches_published_multiset");
  return {d3.holds && d4.holds, s.str()};
}

Line criterion_2() {
  const ClaimResult z3 = claim_zero_scan(3), z4 = claim_zero_scan(4);
  return {z3.holds && z4.holds, "3D zeros " + field(z3.certificate["results"], "zero_count") + ", 4D zeros " +
                                    field(z4.certificate["results"], "zero_count")};
}

Line criterion_3() {
  const ClaimResult r = claim_rank(4, "skew-pairs");
  const Json& res = r.certificate["results"];
  return {r.holds, "formula rank " + field(res, "formula_rank") + ", skew-pair rank " + field(res, "rank") +
                       (r.holds ? ", index lists match" : ", index lists differ")};
}

Line criterion_4(const RunConfig& c) {
  const ClaimResult r = claim_verify(2, published_solution(2), c);
  std::string detail = "residual monomials " + field(r.certificate["results"], "residual_monomial_count");
  if (!r.holds) detail += ", bracket/flow = " + field(r.certificate["results"], "bracket_over_flow");
  return {r.holds, detail};
}

Line criterion_5(const RunConfig& c) {
  const ClaimResult v = claim_verify(3, published_solution(3), c);
  const ClaimResult s = claim_solve(3, "sunflower-descendants", c);
  const Json& res = s.certificate["results"];
  return {v.holds && s.holds, "solution residual " + field(v.certificate["results"], "residual_monomial_count") +
                                  ", kernel " + field(res, "kernel_dimension") + " (raw coefficients " +
                                  field(res, "raw_kernel_dimension") + ")"};
}

Line criterion_6(const RunConfig& c) {
  const ClaimResult v = claim_verify(4, published_solution(4), c);
  const ClaimResult s = claim_solve(4, "sunflower-descendants", c);
  const Json& res = s.certificate["results"];
  std::string detail = "kernel " + field(res, "kernel_dimension") + " after " + std::to_string(res["seeds"].size()) +
                       " instances; published solution ";
  detail += v.holds ? "verifies" : "bracket/flow = " + field(v.certificate["results"], "bracket_over_flow");
  return {v.holds && s.holds, detail};
}

Line criterion_7() {
  const ClaimResult e3 = claim_enumerate(3), e4 = claim_enumerate(4);
  return {e3.holds && e4.holds, "3D " + field(e3.certificate["results"], "burnside_count") + " (published 366), 4D " +
                                    field(e4.certificate["results"], "burnside_count") +
                                    " (published 19957); convention: fixed Casimir slots, epsilon relabelling"};
}

Line criterion_8(const RunConfig& c) {
  const ClaimResult p4 = claim_project(4, c), p3 = claim_project(3, c);
  auto describe = [](const ClaimResult& r) {
    const Json& res = r.certificate["results"];
    if (r.holds) return std::string("exact");
    std::string s = "factor " + field(res, "factor");
    if (res.contains("bracket_factor"))
      s += " (bracket factor " + field(res, "bracket_factor") + ", shift trivial " + field(res, "shift_is_trivial") + ")";
    return s;
  };
  return {p4.holds && p3.holds, "4D->3D " + describe(p4) + "; 3D->2D " + describe(p3)};
}

Line criterion_9(const RunConfig& c) {
  const ClaimResult skew = claim_solve(4, "solution-3d-descendants", c);
  const ClaimResult plain = claim_solve(4, "solution-3d-descendants-plain", c);
  return {skew.holds && plain.holds, "skew pairs " + field(skew.certificate["results"], "status") + ", plain formulas " +
                                         field(plain.certificate["results"], "status")};
}

Line criterion_10(const RunConfig& c) {
  const ClaimResult r = claim_properties(c);
  std::ostringstream s;
  bool first = true;
  for (const auto& [name, v] : r.certificate["results"].items()) {
    if (!v.is_object()) continue;
    s << (first ? "" : ", ") << name << " " << v["checked"].get<std::size_t>() - v["failed"].get<std::size_t>() << "/"
      << v["checked"];
    first = false;
  }
  return {r.holds, s.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria 1-10"};
  RunConfig config;
  config.threads = default_thread_count();
  bool strict = false;
  std::vector<int> only;
  app.add_option("--seed", config.seed)->capture_default_str();
  app.add_option("--threads", config.threads)->check(CLI::PositiveNumber);
  app.add_option("--only", only, "Run only these criteria")->check(CLI::Range(1, 10));
  app.add_flag("--strict", strict, "Exit 1 when any criterion fails");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Line()>> criteria{
      criterion_1,
      criterion_2,
      criterion_3,
      [&] { return criterion_4(config); },
      [&] { return criterion_5(config); },
      [&] { return criterion_6(config); },
      criterion_7,
      [&] { return criterion_8(config); },
      [&] { return criterion_9(config); },
      [&] { return criterion_10(config); },
  };
  const std::set<int> selected(only.begin(), only.end());
  int failures = 0, errors = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(n)) continue;
    const auto start = std::chrono::steady_clock::now();
    Line line;
    try {
      line = criteria[i]();
    } catch (const std::exception& e) {
      line = {false, std::string("error: ") + e.what()};
      ++errors;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !line.pass;
    std::cout << "[" << (line.pass ? "PASS" : "FAIL") << "] criterion " << n << ": " << line.detail << " ("
              << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  }
  if (errors) return 2;
  return strict && failures ? 1 : 0;
}
