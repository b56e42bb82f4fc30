#pragma once

// Brute-force reference computations for the tests. These use nothing from
// the engine but FiniteGroup::mul, so they stay independent of the code under
// test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "galent/finite_group.hpp"

namespace oracle {

using galent::Elem;
using galent::FiniteGroup;
using Members = std::vector<Elem>;

inline Members closure(const FiniteGroup& g, const Members& seed) {
  std::vector<char> in(g.order(), 0);
  Members out = {g.identity()};
  in[g.identity()] = 1;
  for (Elem s : seed) {
    if (!in[s]) {
      in[s] = 1;
      out.push_back(s);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      for (Elem x : {g.mul(out[i], out[j]), g.mul(out[j], out[i])}) {
        if (!in[x]) {
          in[x] = 1;
          out.push_back(x);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool closed(const FiniteGroup& g, const Members& s) {
  std::vector<char> in(g.order(), 0);
  for (Elem x : s) in[x] = 1;
  for (Elem x : s)
    for (Elem y : s)
      if (!in[g.mul(x, y)]) return false;
  return true;
}

// Every subset of size dividing |G| that contains the identity and is closed
// under multiplication. Feasible up to order 24 or so.
inline std::set<Members> subgroups_by_subsets(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<Elem> others;
  for (Elem x = 0; x < n; ++x)
    if (x != g.identity()) others.push_back(x);
  std::set<Members> out;
  for (std::size_t k = 1; k <= n; ++k) {
    if (n % k) continue;
    std::vector<char> pick(others.size(), 0);
    std::fill(pick.begin(), pick.begin() + (k - 1), 1);
    do {
      Members s = {g.identity()};
      for (std::size_t i = 0; i < others.size(); ++i)
        if (pick[i]) s.push_back(others[i]);
      std::sort(s.begin(), s.end());
      if (closed(g, s)) out.insert(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// Every subgroup is a join of cyclic subgroups: close the set of cyclic
// subgroups under pairwise joins until nothing new appears.
inline std::set<Members> subgroups_by_cyclic_joins(const FiniteGroup& g) {
  std::set<Members> cyclic;
  for (Elem x = 0; x < g.order(); ++x) cyclic.insert(closure(g, {x}));
  std::set<Members> all = cyclic;
  std::vector<Members> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<Members> next;
    for (const auto& h : frontier) {
      for (const auto& c : cyclic) {
        if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
        Members seed = h;
        seed.insert(seed.end(), c.begin(), c.end());
        Members j = closure(g, seed);
        if (all.insert(j).second) next.push_back(std::move(j));
      }
    }
    frontier = std::move(next);
  }
  return all;
}

inline Members conjugate(const FiniteGroup& g, const Members& h, Elem x) {
  Members out;
  for (Elem y : h) out.push_back(g.mul(g.mul(x, y), g.inv(x)));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_normal(const FiniteGroup& g, const Members& n, const Members& h) {
  for (Elem x : h)
    if (conjugate(g, n, x) != n) return false;
  return true;
}

inline Members center(const FiniteGroup& g, const Members& h) {
  Members out;
  for (Elem x : h) {
    bool central = true;
    for (Elem y : h) central = central && g.mul(x, y) == g.mul(y, x);
    if (central) out.push_back(x);
  }
  return out;
}

inline Members intersect(const Members& a, const Members& b) {
  Members out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline Members join(const FiniteGroup& g, const Members& a, const Members& b) {
  Members seed = a;
  seed.insert(seed.end(), b.begin(), b.end());
  return closure(g, seed);
}

// Number of bijections x -> y preserving multiplication, by trying them all.
inline std::size_t count_isomorphisms(const FiniteGroup& x, const FiniteGroup& y) {
  if (x.order() != y.order()) return 0;
  std::vector<Elem> perm(y.order());
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::size_t count = 0;
  do {
    bool hom = true;
    for (Elem a = 0; hom && a < x.order(); ++a)
      for (Elem b = 0; hom && b < x.order(); ++b)
        hom = perm[x.mul(a, b)] == y.mul(perm[a], perm[b]);
    count += hom;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace oracle
