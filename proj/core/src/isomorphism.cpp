#include <algorithm>

#include "galent/error.hpp"
#include "galent/group_engine.hpp"

namespace galent {
namespace {

constexpr Elem kUnset = ~Elem{0};

std::vector<std::size_t> class_sizes(const FiniteGroup& g) {
  const Subgroup all = Subgroup::whole(g.ptr());
  const auto gens = generating_set(all);
  std::vector<std::size_t> size(g.order(), 0);
  std::vector<Elem> orbit;
  for (Elem a = 0; a < g.order(); ++a) {
    if (size[a] != 0) continue;
    orbit.assign(1, a);
    std::vector<char> seen(g.order(), 0);
    seen[a] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (Elem s : gens) {
        Elem c = g.conj(s, orbit[i]);
        if (!seen[c]) {
          seen[c] = 1;
          orbit.push_back(c);
        }
      }
    }
    for (Elem c : orbit) size[c] = orbit.size();
  }
  return size;
}

class IsoSearch {
 public:
  IsoSearch(const FiniteGroup& x, const FiniteGroup& y, std::size_t limit)
      : x_(x), y_(y), limit_(limit) {
    gens_ = generating_set(Subgroup::whole(x.ptr()));
    const auto cx = class_sizes(x);
    const auto cy = class_sizes(y);
    for (Elem g : gens_) {
      std::vector<Elem> cand;
      for (Elem c = 0; c < y.order(); ++c) {
        if (y.element_order(c) == x.element_order(g) && cy[c] == cx[g]) cand.push_back(c);
      }
      candidates_.push_back(std::move(cand));
    }
    images_.assign(gens_.size(), kUnset);
  }

  std::vector<ElementMap> run() {
    search(0);
    return std::move(found_);
  }

 private:
  // Builds the map on <gens[0..depth]> and checks it is a well-defined
  // injective homomorphism there. Every edge (x, x*g_j) is checked, so a
  // success proves phi(x w) = phi(x) phi(w) for all words w.
  bool consistent(std::size_t depth, ElementMap& map) const {
    map.assign(x_.order(), kUnset);
    std::vector<char> used(y_.order(), 0);
    map[x_.identity()] = y_.identity();
    used[y_.identity()] = 1;
    std::vector<Elem> queue{x_.identity()};
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const Elem a = queue[i];
      for (std::size_t j = 0; j <= depth; ++j) {
        const Elem b = x_.mul(a, gens_[j]);
        const Elem img = y_.mul(map[a], images_[j]);
        if (map[b] == kUnset) {
          if (used[img]) return false;
          used[img] = 1;
          map[b] = img;
          queue.push_back(b);
        } else if (map[b] != img) {
          return false;
        }
      }
    }
    return true;
  }

  void search(std::size_t depth) {
    if (found_.size() >= limit_) return;
    if (depth == gens_.size()) {
      ElementMap map;
      if (gens_.empty()) {
        map.assign(1, y_.identity());
        found_.push_back(std::move(map));
        return;
      }
      if (consistent(depth - 1, map) &&
          std::find(map.begin(), map.end(), kUnset) == map.end()) {
        found_.push_back(std::move(map));
      }
      return;
    }
    ElementMap scratch;
    for (Elem c : candidates_[depth]) {
      images_[depth] = c;
      if (consistent(depth, scratch)) search(depth + 1);
      if (found_.size() >= limit_) return;
    }
    images_[depth] = kUnset;
  }

  const FiniteGroup& x_;
  const FiniteGroup& y_;
  std::size_t limit_;
  std::vector<Elem> gens_;
  std::vector<std::vector<Elem>> candidates_;
  std::vector<Elem> images_;
  std::vector<ElementMap> found_;
};

std::vector<std::size_t> order_histogram(const FiniteGroup& g) {
  std::vector<std::size_t> h(g.order() + 1, 0);
  for (auto o : g.element_orders()) ++h[o];
  return h;
}

}  // namespace

std::vector<ElementMap> find_isomorphisms(const FiniteGroup& x, const FiniteGroup& y,
                                          std::size_t limit, std::size_t cap) {
  if (x.order() > cap || y.order() > cap) {
    throw CapExceeded("isomorphism search: order " + std::to_string(std::max(x.order(), y.order())) +
                          " exceeds cap " + std::to_string(cap),
                      std::max(x.order(), y.order()));
  }
  if (x.order() != y.order() || order_histogram(x) != order_histogram(y)) return {};
  if (limit == 0) return {};
  return IsoSearch(x, y, limit).run();
}

std::optional<ElementMap> find_isomorphism(const FiniteGroup& x, const FiniteGroup& y,
                                           std::size_t cap) {
  auto maps = find_isomorphisms(x, y, 1, cap);
  if (maps.empty()) return std::nullopt;
  return std::move(maps.front());
}

bool is_isomorphism(const FiniteGroup& x, const FiniteGroup& y, const ElementMap& phi) {
  if (x.order() != y.order() || phi.size() != x.order()) return false;
  std::vector<char> hit(y.order(), 0);
  for (Elem v : phi) {
    if (v >= y.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (Elem a = 0; a < x.order(); ++a)
    for (Elem b = 0; b < x.order(); ++b)
      if (phi[x.mul(a, b)] != y.mul(phi[a], phi[b])) return false;
  return true;
}

}  // namespace galent
