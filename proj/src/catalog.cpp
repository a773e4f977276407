#include "nambu/catalog.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "nambu/resources.hpp"

namespace nambu {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

/// Splits "head (encoding) tail" into head, encoding and tail.
struct Split {
  std::string head, encoding, tail;
};
Split split_encoding(const std::string& line, std::size_t from = 0) {
  const auto open = line.find('(', from);
  const auto close = line.find(')', open);
  if (open == std::string::npos || close == std::string::npos)
    throw std::runtime_error("catalog: no encoding in line '" + line + "'");
  return {line.substr(from, open - from), line.substr(open, close - open + 1), line.substr(close + 1)};
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

Dataset load_list(const std::string& name, const std::string& text, int dim) {
  Dataset d{name, dim, {}, {}};
  for (const auto& line : content_lines(text)) {
    const Split s = split_encoding(line);
    DatasetItem item;
    item.index = std::stoul(trimmed(s.head));
    item.graph = parse_encoding(s.encoding, dim);
    std::istringstream flags(s.tail);
    for (std::string f; flags >> f;) {
      if (f == "bold") {
        item.bold = true;
      } else if (f == "zero") {
        item.zero = true;
      } else {
        throw std::runtime_error("catalog: unknown flag '" + f + "' in " + name);
      }
    }
    if (item.index != d.items.size() + 1) throw std::runtime_error("catalog: non-consecutive index in " + name);
    d.items.push_back(std::move(item));
  }
  return d;
}

Dataset load_weighted(const std::string& name, const std::string& text, int dim) {
  Dataset d{name, dim, {}, {}};
  for (const auto& line : content_lines(text)) {
    const Split s = split_encoding(line);
    DatasetItem item;
    item.index = d.items.size() + 1;
    item.coefficient = Rational::parse(trimmed(s.head));
    item.graph = parse_encoding(s.encoding, dim);
    const std::string tail = trimmed(s.tail);
    if (!tail.empty()) {
      if (tail[0] != '-') throw std::runtime_error("catalog: expected '- (partner)' in " + name);
      item.partner = parse_encoding(trimmed(tail.substr(1)), dim);
    }
    d.items.push_back(std::move(item));
  }
  return d;
}

Dataset load_indices(const std::string& name, const std::string& text) {
  Dataset d{name, 4, {}, {}};
  for (const auto& line : content_lines(text)) {
    std::istringstream in(line);
    for (std::size_t i; in >> i;) d.indices.push_back(i);
  }
  return d;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error("catalog validation failed: " + what);
}

PublishedCatalog load_catalog() {
  const auto manifest = nlohmann::json::parse(read_data_file("manifest.json"));
  require(manifest.at("schema_version").get<int>() == 1, "manifest schema version");
  std::map<std::string, std::string> files;
  for (const auto& [file, sum] : manifest.at("checksums_fnv1a64").items()) {
    std::string text = read_data_file(file);
    require(hex64(fnv1a64(text)) == sum.get<std::string>(), "checksum of " + file);
    files[file] = std::move(text);
  }
  auto file = [&](const std::string& f) -> const std::string& {
    auto it = files.find(f);
    require(it != files.end(), "manifest lists " + f);
    return it->second;
  };

  PublishedCatalog c;
  c.sunflower = load_weighted("sunflower", file("sunflower.txt"), 2);
  c.solution_2d = load_weighted("solution-2d", file("solution-2d.txt"), 2);
  c.solution_3d = load_weighted("solution-3d", file("solution-3d.txt"), 3);
  c.solution_4d = load_weighted("solution-4d", file("solution-4d.txt"), 4);
  c.descendants_3d = load_list("descendants-3d", file("descendants-3d.txt"), 3);
  c.descendants_4d = load_list("descendants-4d", file("descendants-4d.txt"), 4);
  c.independent_4d = load_indices("independent-4d", file("independent-4d.txt"));
  c.skew_independent_4d = load_indices("skew-independent-4d", file("skew-independent-4d.txt"));
  for (const auto& [k, v] : manifest.at("counts").items()) c.counts[k] = v.get<std::size_t>();
  for (const auto& [k, v] : manifest.at("kernel_dimensions").items())
    c.kernel_dimensions[std::stoi(k)] = v.get<std::size_t>();

  require(c.sunflower.items.size() == 2, "sunflower has 2 terms");
  require(c.solution_2d.items.size() == 2, "2D solution has 2 terms");
  require(c.solution_3d.items.size() == 10, "3D solution has 10 terms");
  require(c.solution_4d.items.size() == 27, "4D solution has 27 skew pairs");
  require(c.descendants_3d.items.size() == c.counts.at("descendants_3d"), "3D descendant count");
  require(c.descendants_4d.items.size() == c.counts.at("descendants_4d"), "4D descendant count");
  require(c.independent_4d.indices.size() == c.counts.at("independent_4d"), "independent index count");
  require(c.skew_independent_4d.indices.size() == c.counts.at("skew_independent_4d"), "skew index count");
  std::size_t bold4 = 0;
  for (const auto& it : c.descendants_4d.items) bold4 += it.bold;
  require(bold4 == c.counts.at("zero_4d"), "bold 4D count");
  for (const auto& it : c.solution_4d.items)
    require(it.partner && *it.partner == swap_casimirs(it.graph), "skew partner of " + it.graph.render());
  for (std::size_t i : c.independent_4d.indices) require(i >= 1 && i <= 324, "independent index range");
  for (std::size_t i : c.skew_independent_4d.indices) require(i >= 1 && i <= 324, "skew index range");
  return c;
}

}  // namespace

const PublishedCatalog& catalog() {
  static const PublishedCatalog c = load_catalog();
  return c;
}

std::vector<std::string> dataset_names() {
  return {"sunflower",      "descendants-3d",      "descendants-4d", "zero-3d",     "zero-4d",
          "independent-4d", "skew-independent-4d", "solution-2d",    "solution-3d", "solution-4d"};
}

Dataset dataset(const std::string& name) {
  const PublishedCatalog& c = catalog();
  auto bold_only = [&](const Dataset& src) {
    Dataset d{name, src.dimension, {}, {}};
    for (const auto& it : src.items)
      if (it.bold) d.items.push_back(it);
    return d;
  };
  if (name == "sunflower") return c.sunflower;
  if (name == "descendants-3d") return c.descendants_3d;
  if (name == "descendants-4d") return c.descendants_4d;
  if (name == "zero-3d") return bold_only(c.descendants_3d);
  if (name == "zero-4d") return bold_only(c.descendants_4d);
  if (name == "independent-4d") return c.independent_4d;
  if (name == "skew-independent-4d") return c.skew_independent_4d;
  if (name == "solution-2d") return c.solution_2d;
  if (name == "solution-3d") return c.solution_3d;
  if (name == "solution-4d") return c.solution_4d;
  throw std::out_of_range("unknown dataset '" + name + "'");
}

std::string render_dataset(const Dataset& d) {
  std::ostringstream os;
  if (!d.indices.empty()) {
    for (std::size_t i = 0; i < d.indices.size(); ++i) os << d.indices[i] << (i + 1 == d.indices.size() ? "\n" : " ");
    return os.str();
  }
  const bool weighted = d.name.rfind("solution", 0) == 0 || d.name == "sunflower";
  for (const auto& it : d.items) {
    if (weighted) {
      os << it.coefficient << ' ' << it.graph.render();
      if (it.partner) os << " - " << it.partner->render();
    } else {
      os << it.index << ' ' << it.graph.render();
      if (it.bold) os << " bold";
      if (it.zero) os << " zero";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace nambu
