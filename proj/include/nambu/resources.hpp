#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace nambu {

/// Directory of the shipped data files; NAMBU_DATA_DIR in the environment overrides the build-time path.
inline std::string data_directory() {
  if (const char* env = std::getenv("NAMBU_DATA_DIR"); env && *env) return env;
#ifdef NAMBU_DATA_DIR
  return NAMBU_DATA_DIR;
#else
  return "data";
#endif
}

inline std::string read_data_file(const std::string& name) {
  const std::string path = data_directory() + "/" + name;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open data file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace nambu
