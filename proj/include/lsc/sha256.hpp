#pragma once

#include <cstddef>
#include <string>

namespace lsc {

// FIPS 180-4 SHA-256, lowercase hex digest.
std::string sha256_hex(const void* data, size_t len);
std::string sha256_hex(const std::string& data);
std::string sha256_file_hex(const std::string& path);

}  // namespace lsc
