#pragma once

// Subgroup-lattice diagrams.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "galent/entangle.hpp"

namespace galent {

struct LatticeNode {
  Subgroup rep;
  std::size_t class_size = 1;    // number of conjugates
  IsoClass iso;                  // isomorphism type of the subgroup
  std::optional<IsoClass> type;  // base-change type, when a context is given
};

struct Lattice {
  std::vector<LatticeNode> nodes;                       // in enumeration order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (lower, upper), maximal only
};

// Nodes are conjugacy classes; an edge joins A to B when a conjugate of A
// lies in B with no class strictly between.
Lattice build_lattice(const std::vector<Subgroup>& classes, const EntContext* ctx = nullptr);

std::string to_dot(const Lattice& lattice, std::string_view graph_name = "lattice");

}  // namespace galent
