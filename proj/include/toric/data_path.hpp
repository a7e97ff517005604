#pragma once

#include <string>

namespace toric {

/// Data directory resolution: $TORIC_SOLID_DATA, then the configured source
/// data directory, then ./data.
std::string data_dir();
std::string data_file(const std::string& name);

}  // namespace toric
