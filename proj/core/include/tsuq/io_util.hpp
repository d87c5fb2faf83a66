#pragma once

#include <string>

namespace tsuq {

// 17-significant-digit decimal form ("%.17g"): parses back to the exact
// same double. Used everywhere a float is written to a report file.
std::string fmt_double(double v);

// Whole-file read; throws IoError with the path on failure.
std::string read_file(const std::string& path);

// Write via a temp file in the same directory, then rename over the target,
// so readers never observe a partial file. Creates parent directories.
void atomic_write_file(const std::string& path, const std::string& content);

// mkdir -p; throws IoError on failure.
void ensure_dir(const std::string& path);

}  // namespace tsuq
