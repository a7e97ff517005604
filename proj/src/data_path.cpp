#include "toric/data_path.hpp"

#include <cstdlib>
#include <filesystem>
#include <stdexcept>

namespace toric {

std::string data_dir() {
  if (const char* env = std::getenv("TORIC_SOLID_DATA"); env && *env) return env;
#ifdef TORIC_DATA_DIR
  if (std::filesystem::exists(TORIC_DATA_DIR)) return TORIC_DATA_DIR;
#endif
  return "data";
}

std::string data_file(const std::string& name) {
  std::filesystem::path p = std::filesystem::path(data_dir()) / name;
  if (!std::filesystem::exists(p))
    throw std::runtime_error("data file not found: " + p.string() +
                             " (set TORIC_SOLID_DATA to the data directory)");
  return p.string();
}

}  // namespace toric
