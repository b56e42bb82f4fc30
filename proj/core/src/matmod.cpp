#include "galent/matmod.hpp"

#include <numeric>
#include <ostream>
#include <tuple>
#include <sstream>

#include "galent/error.hpp"

namespace galent {
namespace {

std::uint32_t reduce_signed(std::int64_t v, std::uint32_t n) {
  std::int64_t r = v % static_cast<std::int64_t>(n);
  if (r < 0) r += n;
  return static_cast<std::uint32_t>(r);
}

// Inverse of a unit u mod n by the extended Euclidean algorithm.
std::uint32_t inverse_mod(std::uint32_t u, std::uint32_t n) {
  std::int64_t r0 = n, r1 = u, s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) throw InternalError("inverse_mod: argument is not a unit");
  return reduce_signed(s0, n);
}

}  // namespace

Mat2::Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
           std::uint32_t modulus)
    : modulus_(modulus) {
  if (modulus < 2 || modulus > kMaxModulus) {
    throw PreconditionError("Mat2: modulus " + std::to_string(modulus) +
                            " outside [2, 65536]");
  }
  e_ = {reduce_signed(a, modulus), reduce_signed(b, modulus),
        reduce_signed(c, modulus), reduce_signed(d, modulus)};
  if (std::gcd(det(), modulus) != 1) {
    throw PreconditionError("Mat2: " + to_string() + " is not invertible mod " +
                            std::to_string(modulus));
  }
}

Mat2 Mat2::identity(std::uint32_t modulus) { return Mat2(1, 0, 0, 1, modulus); }

std::uint32_t Mat2::det() const {
  const std::uint64_t n = modulus_;
  const std::uint64_t ad = std::uint64_t{e_[0]} * e_[3] % n;
  const std::uint64_t bc = std::uint64_t{e_[1]} * e_[2] % n;
  return static_cast<std::uint32_t>((ad + n - bc) % n);
}

bool Mat2::is_identity() const {
  return e_[0] == 1 && e_[1] == 0 && e_[2] == 0 && e_[3] == 1;
}

Mat2 Mat2::inverse() const {
  const std::uint64_t n = modulus_;
  const std::uint64_t di = inverse_mod(det(), modulus_);
  return Mat2(Unchecked{},
              {static_cast<std::uint32_t>(e_[3] * di % n),
               static_cast<std::uint32_t>((n - e_[1]) % n * di % n),
               static_cast<std::uint32_t>((n - e_[2]) % n * di % n),
               static_cast<std::uint32_t>(e_[0] * di % n)},
              modulus_);
}

Mat2 Mat2::reduce(std::uint32_t m) const {
  if (m < 2 || modulus_ % m != 0) {
    throw PreconditionError("Mat2::reduce: " + std::to_string(m) +
                            " does not divide modulus " + std::to_string(modulus_));
  }
  return Mat2(Unchecked{}, {e_[0] % m, e_[1] % m, e_[2] % m, e_[3] % m}, m);
}

std::uint64_t Mat2::code() const {
  const std::uint64_t n = modulus_;
  return ((std::uint64_t{e_[0]} * n + e_[1]) * n + e_[2]) * n + e_[3];
}

std::string Mat2::to_string() const {
  std::ostringstream os;
  os << "[[" << e_[0] << ',' << e_[1] << "],[" << e_[2] << ',' << e_[3] << "]]";
  return os.str();
}

std::strong_ordering operator<=>(const Mat2& x, const Mat2& y) {
  if (auto c = x.modulus_ <=> y.modulus_; c != 0) return c;
  return x.e_ <=> y.e_;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  if (x.modulus_ != y.modulus_) {
    throw PreconditionError("Mat2 multiply: modulus mismatch " +
                            std::to_string(x.modulus_) + " vs " +
                            std::to_string(y.modulus_));
  }
  const std::uint64_t n = x.modulus_;
  const auto& a = x.e_;
  const auto& b = y.e_;
  return Mat2(Mat2::Unchecked{},
              {static_cast<std::uint32_t>((std::uint64_t{a[0]} * b[0] + std::uint64_t{a[1]} * b[2]) % n),
               static_cast<std::uint32_t>((std::uint64_t{a[0]} * b[1] + std::uint64_t{a[1]} * b[3]) % n),
               static_cast<std::uint32_t>((std::uint64_t{a[2]} * b[0] + std::uint64_t{a[3]} * b[2]) % n),
               static_cast<std::uint32_t>((std::uint64_t{a[2]} * b[1] + std::uint64_t{a[3]} * b[3]) % n)},
              x.modulus_);
}

Mat2 power(const Mat2& x, std::uint64_t k) {
  Mat2 result = Mat2::identity(x.modulus());
  Mat2 base = x;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

std::uint64_t element_order(const Mat2& x) {
  Mat2 y = x;
  std::uint64_t k = 1;
  while (!y.is_identity()) {
    y = y * x;
    ++k;
  }
  return k;
}

std::pair<Mat2, Mat2> crt_split(const Mat2& x, std::uint32_t p, std::uint32_t q) {
  if (std::gcd(p, q) != 1 || std::uint64_t{p} * q != x.modulus()) {
    throw PreconditionError("crt_split: " + std::to_string(p) + " and " +
                            std::to_string(q) +
                            " must be coprime with product equal to the modulus " +
                            std::to_string(x.modulus()));
  }
  return {x.reduce(p), x.reduce(q)};
}

Mat2 crt_join(const Mat2& xp, const Mat2& xq) {
  const std::uint32_t p = xp.modulus();
  const std::uint32_t q = xq.modulus();
  if (std::gcd(p, q) != 1) {
    throw PreconditionError("crt_join: moduli " + std::to_string(p) + " and " +
                            std::to_string(q) + " are not coprime");
  }
  const std::uint64_t n = std::uint64_t{p} * q;
  if (n > kMaxModulus) throw PreconditionError("crt_join: joined modulus too large");
  // v = a (mod p), v = b (mod q)  =>  v = a + p * ((b - a) * p^{-1} mod q)
  const std::uint64_t p_inv = inverse_mod(p % q, q);
  std::array<std::int64_t, 4> v{};
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t a = xp.entries()[i];
    const std::uint64_t b = xq.entries()[i];
    const std::uint64_t t = (b + q - a % q) % q * p_inv % q;
    v[i] = static_cast<std::int64_t>(a + std::uint64_t{p} * t);
  }
  return Mat2(v[0], v[1], v[2], v[3], static_cast<std::uint32_t>(n));
}

std::ostream& operator<<(std::ostream& os, const Mat2& x) {
  return os << x.to_string() << " mod " << x.modulus();
}

std::uint64_t gl2_prime_order(std::uint64_t p) { return (p * p - 1) * (p * p - p); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace galent
