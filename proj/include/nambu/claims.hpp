#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nambu/catalog.hpp"
#include "nambu/flow.hpp"
#include "nambu/linsolve.hpp"

namespace nambu {

using Json = nlohmann::ordered_json;

/// Version of the certificate layout written by every claim.
inline constexpr int kCertificateSchema = 1;

/// Settings shared by all claims. Every random choice derives from `seed`.
struct RunConfig {
  std::uint64_t seed = 1;
  int degree = 3;          // degree bound of random NambuData
  int min_instances = 3;   // instances before rank stability is tested
  std::string backend;     // "jet" or "eval"; empty picks jet for d <= 3 and eval for d = 4
  int threads = 1;

  [[nodiscard]] std::string backend_for(int dimension) const;
  [[nodiscard]] SamplingOptions sampling() const;
  [[nodiscard]] Json to_json() const;
};

/// NAMBU_THREADS when set to a positive integer, otherwise 1.
int default_thread_count();

/// Outcome of one checked claim with its certificate.
struct ClaimResult {
  bool holds = false;
  std::string summary;  // one line for humans
  Json certificate;
};

/// One member of an ansatz: a micro-graph formula or a skew pair, with a coefficient.
struct AnsatzTerm {
  MicroGraph graph;
  bool skew = false;
  Rational coefficient{1};

  [[nodiscard]] DiffPolyVector formula() const;
};

Json ansatz_to_json(const std::vector<AnsatzTerm>& terms);
std::vector<AnsatzTerm> ansatz_from_json(const Json& j, int dimension);

/// The published trivialising vector field in dimension 2, 3 or 4.
std::vector<AnsatzTerm> published_solution(int dimension);

ClaimResult claim_descend(const std::string& from, int dimension, bool count_only);
ClaimResult claim_enumerate(int dimension);
ClaimResult claim_zero_scan(int dimension);
/// family: "sunflower-descendants" (rank of the 324 formulas) or "skew-pairs".
ClaimResult claim_rank(int dimension, const std::string& family);
ClaimResult claim_skew_pairs();
/// The derived flow scaled so that the published 3D solution verifies exactly.
FlowFormula derive_normalized_flow();
/// Derives the flow weights, normalizes them against the published 3D solution and compares
/// with data/flow.json; writes the JSON to `write_path` when non-empty.
ClaimResult claim_flow_derive(const std::string& write_path);
/// [[P, X]] = Q for the given vector field, jet-exact (d <= 3 or backend jet) or at fresh seeds.
ClaimResult claim_verify(int dimension, const std::vector<AnsatzTerm>& x, const RunConfig& config);
/// Re-checks the ansatz and coefficients stored in a certificate.
ClaimResult claim_verify_certificate(const Json& certificate, const RunConfig& config);
/// families: "sunflower" (d = 2), "sunflower-descendants" (d = 3, 4), and in d = 4
/// "solution-3d-descendants" (skew pairs) or "solution-3d-descendants-plain" (graph formulas).
ClaimResult claim_solve(int dimension, const std::string& family, const RunConfig& config);
/// Projection of the published d-dimensional solution to dimension d - 1.
ClaimResult claim_project(int from_dimension, const RunConfig& config);
/// Schouten axioms, Poisson and cocycle identities, Casimir-swap symmetry, phi backends.
ClaimResult claim_properties(const RunConfig& config);

}  // namespace nambu
