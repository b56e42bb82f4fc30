#pragma once

// Closure, products, quotients, normal structure, subgroup enumeration and
// isomorphism search over FiniteGroup.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "galent/finite_group.hpp"
#include "galent/matmod.hpp"

namespace galent {

// --- construction -----------------------------------------------------------

// Smallest subgroup of GL2(Z/modulus) containing `generators`.
// Throws CapExceeded if the closure grows beyond `cap` elements.
GroupPtr generate_group(std::span<const Mat2> generators, std::uint32_t modulus,
                        std::size_t cap = kDefaultOrderCap);

// GL2(Z/n) and SL2(Z/n) by exhaustive enumeration.
GroupPtr general_linear_group(std::uint32_t n, std::size_t cap = kDefaultOrderCap);
GroupPtr special_linear_group(std::uint32_t n, std::size_t cap = kDefaultOrderCap);

GroupPtr cyclic_group(std::uint32_t n);

// <r, s | r^n = 1, s^2 = r^twist, s r s^-1 = r^action> on normal forms r^i s^j.
// Dihedral: (n, 0, n-1). Generalized quaternion: (n, n/2, n-1).
GroupPtr metacyclic_group(std::uint32_t n, std::uint32_t twist, std::uint32_t action);

struct ProductGroup {
  GroupPtr group;
  GroupPtr left;
  GroupPtr right;
  Subgroup left_factor;   // A x 1
  Subgroup right_factor;  // 1 x B
};

// A x B as pairs, ordered lexicographically on components.
ProductGroup direct_product(GroupPtr a, GroupPtr b, std::size_t cap = kDefaultOrderCap);

// A x B realized inside GL2(Z/pq) through crt_join, for matrix groups with
// coprime moduli p = modulus(A), q = modulus(B).
ProductGroup crt_product(const GroupPtr& a, const GroupPtr& b,
                         std::size_t cap = kDefaultOrderCap);

// Either crt_product (matrix groups with coprime moduli) or direct_product.
ProductGroup natural_product(const GroupPtr& a, const GroupPtr& b,
                             std::size_t cap = kDefaultOrderCap);

// Projection of an element of a natural_product onto its two factors.
std::pair<Elem, Elem> product_components(const ProductGroup& prod, Elem x);
Elem product_element(const ProductGroup& prod, Elem a, Elem b);

// --- subgroup calculus ------------------------------------------------------

Subgroup subgroup_closure(const GroupPtr& g, std::span<const Elem> seed);
Subgroup join(const Subgroup& x, const Subgroup& y);
Subgroup intersection(const Subgroup& x, const Subgroup& y);
bool is_subset(const Subgroup& x, const Subgroup& y);
Subgroup conjugate(const Subgroup& h, Elem g);  // g H g^-1

// A small generating set (greedy, by descending element order).
std::vector<Elem> generating_set(const Subgroup& h);

// N_G(H) inside the parent of H.
Subgroup normalizer(const Subgroup& h);
// Whether `n` is normal in `h` (n must lie inside h).
bool is_normal_in(const Subgroup& n, const Subgroup& h);
// Smallest subgroup of `h` containing `seed` that is normal in `h`.
Subgroup normal_closure(const Subgroup& h, std::span<const Elem> seed);

// Representatives of the conjugacy classes of elements of `h` (under h).
std::vector<Elem> conjugacy_class_representatives(const Subgroup& h);

struct NormalStructure {
  std::vector<Subgroup> normal_subgroups;  // sorted by (size, members)
  Subgroup center;
  Subgroup derived;
  std::vector<std::uint64_t> abelian_invariants;  // invariant factors of H/H'
};

NormalStructure normal_structure(const Subgroup& h);
std::vector<Subgroup> normal_subgroups(const Subgroup& h);
Subgroup center(const Subgroup& h);
Subgroup derived_subgroup(const Subgroup& h);
bool is_abelian(const Subgroup& h);

// Invariant factors of H/H'.
std::vector<std::uint64_t> abelianization_invariants(const Subgroup& h, const Subgroup& derived);

// Invariant factors d1 | d2 | ... of an abelian group given its element orders.
std::vector<std::uint64_t> abelian_invariants_from_orders(std::span<const std::uint32_t> orders);

// H/N on coset labels. Throws PreconditionError unless N is a normal subgroup
// of H (both in the same parent).
GroupPtr quotient_group(const Subgroup& h, const Subgroup& n);

// H as a group in its own right, keeping the parent's element realization.
GroupPtr subgroup_as_group(const Subgroup& h);

// --- isomorphisms -----------------------------------------------------------

inline constexpr std::size_t kIsomorphismCap = 512;

// Element map x -> phi(x), indexed by source element.
using ElementMap = std::vector<Elem>;

// All isomorphisms x -> y (at most `limit`), found by backtracking over the
// images of a generating set. Throws CapExceeded above `cap`.
std::vector<ElementMap> find_isomorphisms(const FiniteGroup& x, const FiniteGroup& y,
                                          std::size_t limit = SIZE_MAX,
                                          std::size_t cap = kIsomorphismCap);
std::optional<ElementMap> find_isomorphism(const FiniteGroup& x, const FiniteGroup& y,
                                           std::size_t cap = kIsomorphismCap);

// Verifies that `phi` is a bijective homomorphism x -> y.
bool is_isomorphism(const FiniteGroup& x, const FiniteGroup& y, const ElementMap& phi);

// Fiber product of A and B over A/N_A -> B/N_B, where `phi` maps coset labels
// of quotient_group(whole(A), N_A) to those of quotient_group(whole(B), N_B).
// Throws PreconditionError if phi is not an isomorphism.
GroupPtr fiber_product(const Subgroup& n_a, const Subgroup& n_b, const ElementMap& phi,
                       std::size_t cap = kDefaultOrderCap);

// The subgroup {(a, b) : a in P_A, b in P_B, phi(a K_A) = b K_B} of a
// natural product, where phi maps coset labels of quotient_group(P_A, K_A) to
// those of quotient_group(P_B, K_B).
Subgroup fiber_subgroup(const ProductGroup& prod, const Subgroup& p_a, const Subgroup& k_a,
                        const Subgroup& p_b, const Subgroup& k_b, const ElementMap& phi);

// --- enumeration ------------------------------------------------------------

enum class Conjugacy { kAll, kUpToConjugacy };

struct EnumerationOptions {
  std::size_t cap_all = 4096;
  std::size_t cap_classes = 15000;
  // Nonzero: shuffle the candidate order with this seed. The result must not
  // depend on it; tests use it as a completeness cross-check.
  std::uint64_t shuffle_seed = 0;
};

// Every subgroup, or one representative per conjugacy class (the conjugate
// with lexicographically least member list). Sorted by (size, members).
// Throws CapExceeded when |G| exceeds the cap for the requested mode.
std::vector<Subgroup> enumerate_subgroups(const GroupPtr& g, Conjugacy mode,
                                          const EnumerationOptions& options = {});

// The conjugate of `h` with lexicographically least member list.
Subgroup canonical_conjugate(const Subgroup& h);
// All distinct conjugates of `h`, sorted.
std::vector<Subgroup> conjugacy_class(const Subgroup& h);

}  // namespace galent
