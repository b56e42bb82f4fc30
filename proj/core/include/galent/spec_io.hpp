#pragma once

// JSON group specifications.
//
//   {"kind":"gl2","modulus":N}
//   {"kind":"sl2","modulus":N}
//   {"kind":"generators","modulus":N,"matrices":[[[a,b],[c,d]],...]}
//   {"kind":"product","p":p,"q":q,"left":<spec>,"right":<spec>}
//   {"kind":"fiber","left":<spec>,"right":<spec>,"quotient_order":m}

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "galent/entangle.hpp"
#include "galent/matmod.hpp"

namespace galent {

inline constexpr int kSpecSchemaVersion = 1;

struct GroupSpec {
  enum class Kind { kGl2, kSl2, kGenerators, kProduct, kFiber };

  Kind kind = Kind::kGl2;
  std::uint32_t modulus = 0;      // gl2, sl2, generators
  std::vector<Mat2> matrices;     // generators
  std::uint32_t p = 0, q = 0;     // product
  std::shared_ptr<const GroupSpec> left, right;  // product, fiber
  std::uint32_t quotient_order = 0;              // fiber
};

// Throws SpecError carrying a JSON pointer ("/left/matrices/1") on bad input.
GroupSpec parse_spec(std::string_view text);
GroupSpec read_spec_file(const std::string& path);

// Canonical compact JSON; parse_spec(to_json(s)) reproduces s.
std::string to_json(const GroupSpec& spec);
// SHA-256 of the canonical JSON.
std::string spec_hash(const GroupSpec& spec);

struct BuiltSpec {
  GroupPtr group;
  // Present whenever the group carries a mod-p / mod-q split: a matrix group
  // of modulus pq with p, q distinct primes, a product, or a fiber product.
  std::optional<EntContext> context;
};

// Fiber specs use the first pair (N_A, N_B) of normal subgroups of index m
// with isomorphic quotients, in (size, members) order, and the first
// isomorphism found between the quotients.
BuiltSpec build(const GroupSpec& spec, std::size_t cap = kDefaultOrderCap);

// Splits n into two distinct primes, if it is such a product.
std::optional<std::pair<std::uint32_t, std::uint32_t>> two_prime_split(std::uint32_t n);

}  // namespace galent
