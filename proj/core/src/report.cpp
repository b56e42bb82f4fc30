#include "galent/report.hpp"

#include <sstream>

namespace galent {
namespace {

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

Lattice build_lattice(const std::vector<Subgroup>& classes, const EntContext* ctx) {
  Lattice lat;
  const std::size_t k = classes.size();
  IsoClassifier classifier;
  std::vector<std::vector<Subgroup>> conjugates(k);
  for (std::size_t i = 0; i < k; ++i) {
    conjugates[i] = conjugacy_class(classes[i]);
    LatticeNode node;
    node.rep = classes[i];
    node.class_size = conjugates[i].size();
    node.iso = classifier.identify(*subgroup_as_group(classes[i]));
    if (ctx) node.type = base_change_type(*ctx, classes[i], &classifier);
    lat.nodes.push_back(std::move(node));
  }
  // below[i][j]: some conjugate of class i lies in the representative of j.
  std::vector<std::vector<char>> below(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (classes[i].size() >= classes[j].size() || classes[j].size() % classes[i].size()) continue;
      for (const Subgroup& c : conjugates[i])
        if (is_subset(c, classes[j])) {
          below[i][j] = 1;
          break;
        }
    }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (!below[i][j]) continue;
      bool maximal = true;
      for (std::size_t m = 0; m < k && maximal; ++m)
        if (below[i][m] && below[m][j]) maximal = false;
      if (maximal) lat.edges.emplace_back(i, j);
    }
  return lat;
}

std::string to_dot(const Lattice& lattice, std::string_view graph_name) {
  std::ostringstream os;
  os << "digraph " << quoted(graph_name) << " {\n";
  os << "  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < lattice.nodes.size(); ++i) {
    const auto& n = lattice.nodes[i];
    std::string label = n.iso.label + " (order " + std::to_string(n.rep.size()) + ", " +
                        std::to_string(n.class_size) + " conj.)";
    if (n.type) label += "\\ntype " + n.type->label;
    os << "  n" << i << " [label=" << quoted(label) << "];\n";
  }
  for (const auto& [lo, hi] : lattice.edges) os << "  n" << lo << " -> n" << hi << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace galent
