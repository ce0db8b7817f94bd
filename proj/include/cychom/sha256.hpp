#pragma once

#include <string>

namespace cychom {

/* Hex digest of the SHA-256 of the given bytes. */
std::string sha256_hex(const std::string& bytes);

} // namespace cychom
