#include "galent/content_hash.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "galent/error.hpp"

namespace galent {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw InternalError("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 15];
  }
  return out;
}

std::string group_content_hash(const FiniteGroup& g) {
  std::string buf = "galent-group/1;rep=" + std::to_string(static_cast<int>(g.representation())) +
                    ";mod=" + std::to_string(g.modulus()) + ";n=" + std::to_string(g.order()) + ";";
  for (Elem x = 0; x < g.order(); ++x) {
    for (std::int32_t v : g.key(x)) {
      buf += std::to_string(v);
      buf += ',';
    }
    buf += ';';
  }
  // Coset labels and abstract keys do not pin down the multiplication.
  const auto rep = g.representation();
  if (rep == Representation::kCoset || rep == Representation::kAbstract) {
    buf += "table;";
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y) {
        buf += std::to_string(g.mul(x, y));
        buf += ',';
      }
  }
  return sha256_hex(buf);
}

}  // namespace galent
