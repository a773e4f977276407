#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nambu/micrograph.hpp"
#include "nambu/rational.hpp"

namespace nambu {

/// One catalog line: an encoding with its list position, flags and (for solutions) a coefficient.
struct DatasetItem {
  std::size_t index = 0;               // 1-based position in the published list
  MicroGraph graph;
  std::optional<MicroGraph> partner;   // swapped graph of a skew pair
  Rational coefficient{1};
  bool bold = false;                   // formula published as zero
  bool zero = false;                   // additionally marked as a zero graph
};

/// Read-only slice of the published data.
struct Dataset {
  std::string name;
  int dimension = 0;
  std::vector<DatasetItem> items;
  std::vector<std::size_t> indices;  // index-list datasets only
};

/// Every shipped dataset, validated on load (checksums, encodings, list lengths).
struct PublishedCatalog {
  Dataset sunflower;
  Dataset descendants_3d;
  Dataset descendants_4d;
  Dataset independent_4d;
  Dataset skew_independent_4d;
  Dataset solution_2d;
  Dataset solution_3d;
  Dataset solution_4d;
  std::map<std::string, std::size_t> counts;
  std::map<int, std::size_t> kernel_dimensions;
};

/// Loads and validates data/ once; throws std::runtime_error on any mismatch.
const PublishedCatalog& catalog();

/// Names accepted by dataset().
std::vector<std::string> dataset_names();

/// A named slice: sunflower, descendants-3d, descendants-4d, zero-3d, zero-4d, independent-4d,
/// skew-independent-4d, solution-2d, solution-3d, solution-4d. Throws std::out_of_range otherwise.
Dataset dataset(const std::string& name);

/// Text form of a dataset, one item per line, suitable for diffing against the data files.
std::string render_dataset(const Dataset& d);

/// 64-bit FNV-1a hash of a byte string.
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace nambu
