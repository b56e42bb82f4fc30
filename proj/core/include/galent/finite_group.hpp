#pragma once

// Explicit finite groups with canonically indexed elements, and subgroups of
// them as sorted index sets.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "galent/matmod.hpp"

namespace galent {

using Elem = std::uint32_t;
using ElementKey = std::vector<std::int32_t>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr std::size_t kCayleyTableThreshold = 4096;
inline constexpr std::size_t kDefaultOrderCap = 50000;

// How elements are realized; determines the on-demand multiplication path for
// groups too large for a Cayley table.
enum class Representation {
  kMatrix,    // Mat2 over Z/N
  kPair,      // pairs (a, b) in a product of two groups
  kCoset,     // cosets of a normal subgroup, labelled by their least element
  kAbstract,  // bare Cayley table
};

// An immutable finite group. Elements are 0..order()-1, ordered by their keys
// (lexicographic), so two constructions of the same element set agree index
// for index. Always held through GroupPtr.
class FiniteGroup : public std::enable_shared_from_this<FiniteGroup> {
 public:
  // `elements` must be closed under multiplication; they are sorted and
  // deduplicated here.
  static GroupPtr from_matrices(std::vector<Mat2> elements);

  // Pairs (l, r) with l in `left`, r in `right`, closed under componentwise
  // multiplication. An empty `pairs` with `full` set means the whole product.
  static GroupPtr from_pairs(GroupPtr left, GroupPtr right,
                             std::vector<std::pair<Elem, Elem>> pairs);
  static GroupPtr full_product(GroupPtr left, GroupPtr right);

  // Quotient H/N with H = `members` of `parent` and N normal in H. The coset
  // of each element is given by `coset_of` (indexed by parent element, only
  // entries for members of H are read), with cosets numbered in order of their
  // least element.
  static GroupPtr from_cosets(GroupPtr parent, std::vector<Elem> coset_reps,
                              std::vector<Elem> coset_of);

  // Cayley table in row-major order plus one key per element. Checks the group
  // axioms (associativity only up to order 128). Elements are re-sorted by key.
  static GroupPtr from_table(std::vector<Elem> table, std::vector<ElementKey> keys);

  FiniteGroup(const FiniteGroup&) = delete;
  FiniteGroup& operator=(const FiniteGroup&) = delete;

  std::size_t order() const { return n_; }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[std::size_t{a} * n_ + b];
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inverse_[g]); }  // g x g^-1
  std::uint32_t element_order(Elem a) const { return orders_[a]; }
  const std::vector<std::uint32_t>& element_orders() const { return orders_; }
  bool has_cayley_table() const { return !table_.empty(); }

  const ElementKey& key(Elem a) const { return keys_[a]; }
  std::optional<Elem> find(const ElementKey& key) const;
  std::string element_label(Elem a) const;

  Representation representation() const { return rep_; }

  // kMatrix
  bool is_matrix_group() const { return rep_ == Representation::kMatrix; }
  std::uint32_t modulus() const { return modulus_; }
  const Mat2& matrix(Elem a) const { return mats_[a]; }
  std::optional<Elem> find(const Mat2& m) const;

  // kPair
  bool is_pair_group() const { return rep_ == Representation::kPair; }
  const GroupPtr& left_factor() const { return left_; }
  const GroupPtr& right_factor() const { return right_; }
  std::pair<Elem, Elem> components(Elem a) const { return comps_[a]; }
  std::optional<Elem> find_pair(Elem l, Elem r) const;

  // kCoset
  const GroupPtr& coset_parent() const { return parent_; }
  Elem coset_representative(Elem a) const { return coset_reps_[a]; }
  Elem coset_of(Elem parent_elem) const { return coset_of_[parent_elem]; }

  GroupPtr ptr() const { return shared_from_this(); }

 private:
  FiniteGroup() = default;
  Elem mul_slow(Elem a, Elem b) const;
  void finish();  // inverse, identity, orders, optional Cayley table

  std::size_t n_ = 0;
  Elem identity_ = 0;
  Representation rep_ = Representation::kAbstract;
  std::vector<ElementKey> keys_;
  std::vector<Elem> inverse_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint16_t> table_;

  std::uint32_t modulus_ = 0;
  std::vector<Mat2> mats_;
  std::vector<std::int32_t> dense_index_;
  std::unordered_map<std::uint64_t, Elem> sparse_index_;

  GroupPtr left_, right_;
  std::vector<std::pair<Elem, Elem>> comps_;
  bool full_product_ = false;

  GroupPtr parent_;
  std::vector<Elem> coset_reps_;
  std::vector<Elem> coset_of_;

  std::vector<Elem> abstract_table_;
};

// A subgroup as a sorted set of element indices of its parent. Values built
// by the engine are closed by construction; `checked` validates input.
class Subgroup {
 public:
  Subgroup() = default;

  // Caller guarantees `members` is a sorted subgroup. `generators`, when
  // known, is a generating set.
  static Subgroup trusted(GroupPtr parent, std::vector<Elem> members,
                          std::vector<Elem> generators = {});
  // Sorts, deduplicates and verifies closure, identity and Lagrange.
  static Subgroup checked(GroupPtr parent, std::vector<Elem> members);
  static Subgroup whole(GroupPtr parent);
  static Subgroup trivial(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(Elem e) const;
  std::vector<char> mask() const;
  const std::vector<Elem>& known_generators() const { return gens_; }

  friend bool operator==(const Subgroup& x, const Subgroup& y) {
    return x.parent_ == y.parent_ && x.members_ == y.members_;
  }
  // Orders by size, then member list.
  friend bool operator<(const Subgroup& x, const Subgroup& y) {
    if (x.members_.size() != y.members_.size()) return x.members_.size() < y.members_.size();
    return x.members_ < y.members_;
  }

 private:
  GroupPtr parent_;
  std::vector<Elem> members_;
  std::vector<Elem> gens_;
};

struct MemberHash {
  std::size_t operator()(const std::vector<Elem>& v) const noexcept;
};

}  // namespace galent
