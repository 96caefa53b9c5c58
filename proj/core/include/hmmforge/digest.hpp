#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace hmmforge {

/// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view data);
/// First eight bytes of SHA-256, big-endian.
std::uint64_t digest64(std::string_view data);

}  // namespace hmmforge
