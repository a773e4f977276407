#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nambu/claims.hpp"

using namespace nambu;

namespace {

constexpr int kExitUsage = 2;

struct Options {
  RunConfig config;
  std::string output;
  bool rederive_flow = false;
  int dim = 0;
  std::string from = "sunflower";
  bool count_only = false;
  std::string family;
  std::string solution = "builtin";
  std::string certificate;
  std::string write;
  std::string dataset;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  return Json::parse(in);
}

int emit(const ClaimResult& r, const std::string& output) {
  const std::string text = r.certificate.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << text;
  }
  std::cerr << (r.holds ? "holds: " : "FAILS: ") << r.summary << "\n";
  return r.holds ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Micro-graph calculus for Nambu-Poisson brackets and the tetrahedral flow"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  o.config.threads = default_thread_count();

  app.add_option("--seed", o.config.seed, "Base seed for every random choice")->capture_default_str();
  app.add_option("--degree", o.config.degree, "Degree bound of random Nambu data")->capture_default_str();
  app.add_option("--instances", o.config.min_instances, "Minimum number of sampled instances")->capture_default_str();
  app.add_option("--backend", o.config.backend, "jet or eval (default: jet for d <= 3, eval for d = 4)")
      ->check(CLI::IsMember({"jet", "eval"}));
  app.add_option("--threads", o.config.threads, "Worker threads (default: NAMBU_THREADS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--output,-o", o.output, "Write the certificate here instead of stdout");
  app.add_flag("--rederive-flow", o.rederive_flow, "Derive the flow weights instead of reading data/flow.json");

  auto* descend = app.add_subcommand("descend", "Descendants of a lower-dimensional micro-graph");
  descend->add_option("--from", o.from, "'sunflower' or an encoding")->capture_default_str();
  descend->add_option("--dim", o.dim, "Target dimension")->required()->check(CLI::Range(3, 4));
  descend->add_flag("--count-only", o.count_only, "Omit the encodings");

  auto* enumerate = app.add_subcommand("enumerate", "Count all micro-graphs up to relabelling");
  enumerate->add_option("--dim", o.dim)->required()->check(CLI::Range(2, 4));

  auto* zero = app.add_subcommand("zero-scan", "Descendants whose formula vanishes");
  zero->add_option("--dim", o.dim)->required()->check(CLI::Range(3, 4));

  auto* rank = app.add_subcommand("rank", "Greedy independent subset of the 4D descendant formulas");
  rank->add_option("--dim", o.dim)->required()->check(CLI::Range(4, 4));
  rank->add_option("--family", o.family)->required()->check(CLI::IsMember({"sunflower-descendants", "skew-pairs"}));

  app.add_subcommand("skew-pairs", "Independent skew pairs among the 4D descendants");

  auto* flow = app.add_subcommand("flow-derive", "Derive and normalize the tetrahedral flow weights");
  flow->add_option("--write", o.write, "Write the normalized flow JSON to this path");

  auto* verify = app.add_subcommand("verify", "Check [[P, X]] = Q for a vector field");
  verify->add_option("--dim", o.dim, "Dimension (with --solution)")->check(CLI::Range(2, 4));
  verify->add_option("--solution", o.solution, "'builtin' or a JSON file holding an ansatz")->capture_default_str();
  verify->add_option("--certificate", o.certificate, "Re-check the solution stored in a certificate");

  auto* solve_cmd = app.add_subcommand("solve", "Solve [[P, X]] = Q over an ansatz family");
  solve_cmd->add_option("--dim", o.dim)->required()->check(CLI::Range(2, 4));
  solve_cmd->add_option("--family", o.family)
      ->required()
      ->check(CLI::IsMember({"sunflower", "sunflower-descendants", "solution-3d-descendants", "solution-3d-descendants-plain"}));

  auto* project = app.add_subcommand("project", "Project the published solution one dimension down");
  project->add_option("--from", o.dim, "Source dimension")->required()->check(CLI::Range(3, 4));

  auto* properties = app.add_subcommand("properties", "Schouten axioms, cocycle identities and backend agreement");

  auto* dump = app.add_subcommand("dump", "Print a dataset (or 'flow') as text");
  dump->add_option("name", o.dataset, "Dataset name; 'list' prints the names")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (o.rederive_flow) replace_builtin_flow(derive_normalized_flow());
    if (*dump) {
      if (o.dataset == "list") {
        for (const auto& n : dataset_names()) std::cout << n << "\n";
      } else if (o.dataset == "flow") {
        std::cout << flow_to_json(builtin_flow());
      } else {
        std::cout << render_dataset(dataset(o.dataset));
      }
      return 0;
    }
    ClaimResult r;
    if (*descend) r = claim_descend(o.from, o.dim, o.count_only);
    else if (*enumerate) r = claim_enumerate(o.dim);
    else if (*zero) r = claim_zero_scan(o.dim);
    else if (*rank) r = claim_rank(o.dim, o.family);
    else if (app.got_subcommand("skew-pairs")) r = claim_skew_pairs();
    else if (*flow) r = claim_flow_derive(o.write);
    else if (*verify) {
      if (!o.certificate.empty()) {
        r = claim_verify_certificate(read_json(o.certificate), o.config);
      } else {
        if (o.dim == 0) throw std::invalid_argument("verify: --dim is required with --solution");
        std::vector<AnsatzTerm> x;
        if (o.solution == "builtin") {
          x = published_solution(o.dim);
        } else {
          const Json j = read_json(o.solution);
          x = ansatz_from_json(j.contains("terms") ? j.at("terms") : j, o.dim);
        }
        r = claim_verify(o.dim, x, o.config);
      }
    } else if (*solve_cmd) r = claim_solve(o.dim, o.family, o.config);
    else if (*project) r = claim_project(o.dim, o.config);
    else if (*properties) r = claim_properties(o.config);
    return emit(r, o.output);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
