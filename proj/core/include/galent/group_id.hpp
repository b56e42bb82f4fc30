#pragma once

// Isomorphism-class labels for small finite groups.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "galent/finite_group.hpp"

namespace galent {

// Bumped whenever the label strings produced below change.
inline constexpr int kIsoLabelVersion = 2;

// Exact identification (catalog confirmation, fingerprint disambiguation)
// is guaranteed up to this order.
inline constexpr std::size_t kIdentifyCap = 512;

struct Fingerprint {
  std::size_t order = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> order_counts;  // (element order, count)
  std::size_t center = 0;
  std::size_t derived = 0;
  std::vector<std::uint64_t> abelianization;
  bool nilpotent = false;
  bool solvable = false;

  std::string to_string() const;  // "fp:o16-e1^1.2^3...-z2-d4-ab2.2-nil-sol"
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

Fingerprint fingerprint(const FiniteGroup& g);

// An isomorphism type label: "1", "Z/n", "Z/2xZ/4", a catalog name such as
// "S3" or "SL2(3)", or a fingerprint string.
struct IsoClass {
  std::string label;
  std::size_t order = 0;
  // False only for fingerprint labels of groups beyond kIdentifyCap, where
  // two non-isomorphic groups could share a label.
  bool exact = true;

  friend bool operator==(const IsoClass& x, const IsoClass& y) { return x.label == y.label; }
  friend bool operator<(const IsoClass& x, const IsoClass& y) {
    return x.order != y.order ? x.order < y.order : x.label < y.label;
  }
};

struct CatalogEntry {
  std::string name;
  GroupPtr model;
};

// Named non-abelian groups, each built from defining relations or matrices.
const std::vector<CatalogEntry>& catalog();
GroupPtr catalog_model(std::string_view name);

// Names groups consistently across many calls: groups sharing a fingerprint
// but not isomorphic receive distinct serials ("...#2").
class IsoClassifier {
 public:
  IsoClass identify(const FiniteGroup& g);

 private:
  std::map<std::string, std::vector<GroupPtr>> models_;
};

// Stateless identification; fingerprint labels carry no serial.
IsoClass identify(const FiniteGroup& g);

// Fingerprint fast-reject, then a backtracking isomorphism search.
// Throws CapExceeded above kIdentifyCap.
bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h);

std::string abelian_label(const std::vector<std::uint64_t>& invariants);

}  // namespace galent
