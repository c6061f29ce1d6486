#pragma once

#include <filesystem>
#include <string>

namespace wearlab {

std::string read_file(const std::filesystem::path& path);

// Writes via a sibling temp file + rename so readers never observe a
// truncated artifact.
void atomic_write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace wearlab
