#include "hmmforge/digest.hpp"

#include <array>

#include <openssl/evp.h>

#include "hmmforge/error.hpp"

namespace hmmforge {

namespace {

std::array<unsigned char, 32> sha256(std::string_view data) {
  std::array<unsigned char, 32> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1 || len != md.size()) {
    throw Error(ErrorKind::Io, "SHA-256 digest failed");
  }
  return md;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(64);
  for (unsigned char b : sha256(data)) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 0xf]);
  }
  return out;
}

std::uint64_t digest64(std::string_view data) {
  const auto md = sha256(data);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | md[static_cast<std::size_t>(i)];
  return v;
}

}  // namespace hmmforge
