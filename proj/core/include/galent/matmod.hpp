#pragma once

// 2x2 invertible matrices over Z/N.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

namespace galent {

inline constexpr std::uint32_t kMaxModulus = 1u << 16;

// An element of GL2(Z/N). Entries are kept as least non-negative residues and
// the determinant is checked to be a unit once, at construction.
class Mat2 {
 public:
  // Reduces the entries mod `modulus`; throws PreconditionError if the
  // modulus is out of range or the determinant is not a unit.
  Mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d,
       std::uint32_t modulus);

  static Mat2 identity(std::uint32_t modulus);

  std::uint32_t a() const { return e_[0]; }
  std::uint32_t b() const { return e_[1]; }
  std::uint32_t c() const { return e_[2]; }
  std::uint32_t d() const { return e_[3]; }
  std::uint32_t modulus() const { return modulus_; }
  const std::array<std::uint32_t, 4>& entries() const { return e_; }

  std::uint32_t det() const;
  bool is_identity() const;

  // Inverse in GL2(Z/N); always exists by the construction invariant.
  Mat2 inverse() const;

  // Reduction modulo a divisor m of the modulus.
  Mat2 reduce(std::uint32_t m) const;

  // Dense integer code ((a*N + b)*N + c)*N + d, unique for a fixed modulus.
  std::uint64_t code() const;

  std::string to_string() const;  // "[[a,b],[c,d]]"

  friend bool operator==(const Mat2&, const Mat2&) = default;
  // Lexicographic on (modulus, a, b, c, d).
  friend std::strong_ordering operator<=>(const Mat2& x, const Mat2& y);

 private:
  struct Unchecked {};
  Mat2(Unchecked, std::array<std::uint32_t, 4> e, std::uint32_t modulus)
      : e_(e), modulus_(modulus) {}
  friend Mat2 operator*(const Mat2& x, const Mat2& y);

  std::array<std::uint32_t, 4> e_{};
  std::uint32_t modulus_ = 2;
};

// Group law of GL2(Z/N). Throws PreconditionError on modulus mismatch.
Mat2 operator*(const Mat2& x, const Mat2& y);

Mat2 power(const Mat2& x, std::uint64_t k);

// Smallest k >= 1 with x^k = I.
std::uint64_t element_order(const Mat2& x);

// CRT isomorphism GL2(Z/pq) -> GL2(Z/p) x GL2(Z/q) and its inverse.
// p and q must be coprime with p*q equal to the modulus of x.
std::pair<Mat2, Mat2> crt_split(const Mat2& x, std::uint32_t p, std::uint32_t q);
Mat2 crt_join(const Mat2& xp, const Mat2& xq);

std::ostream& operator<<(std::ostream& os, const Mat2& x);

// |GL2(Z/p)| = (p^2 - 1)(p^2 - p) for a prime p.
std::uint64_t gl2_prime_order(std::uint64_t p);

bool is_prime(std::uint64_t n);

}  // namespace galent
