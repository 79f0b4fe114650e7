#pragma once

#include <string>

namespace dynforge {

// SHA-256 digest of the bytes, as 64 lowercase hex characters.
std::string sha256_hex(const std::string& bytes);

}  // namespace dynforge
