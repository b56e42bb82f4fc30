#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "galent/error.hpp"
#include "galent/group_engine.hpp"

namespace galent {
namespace {

// Elements x outside H, one per orbit of the operations that preserve <H, x>
// (up to conjugacy when `normalizer_gens` is given): x -> h x, x -> x h,
// x -> x^k with k prime to ord(x), and x -> n x n^-1 for n in N_G(H).
std::vector<Elem> augmentation_candidates(const FiniteGroup& g, const std::vector<char>& in_h,
                                          const std::vector<Elem>& h_gens,
                                          const std::vector<Elem>& normalizer_gens) {
  std::vector<char> visited(g.order(), 0);
  std::vector<Elem> reps;
  std::vector<Elem> orbit;
  auto visit = [&](Elem y) {
    if (!visited[y]) {
      visited[y] = 1;
      orbit.push_back(y);
    }
  };
  for (Elem x = 0; x < g.order(); ++x) {
    if (in_h[x] || visited[x]) continue;
    reps.push_back(x);
    orbit.assign(1, x);
    visited[x] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      const Elem y = orbit[i];
      for (Elem h : h_gens) {
        visit(g.mul(h, y));
        visit(g.mul(y, h));
      }
      for (Elem n : normalizer_gens) visit(g.conj(n, y));
      const std::uint32_t ord = g.element_order(y);
      Elem p = y;
      for (std::uint32_t k = 2; k < ord; ++k) {
        p = g.mul(p, y);
        if (std::gcd(k, ord) == 1) visit(p);
      }
    }
  }
  return reps;
}

Subgroup extend(const Subgroup& h, Elem x) {
  std::vector<Elem> seed = generating_set(h);
  seed.push_back(x);
  return subgroup_closure(h.parent(), seed);
}

// Left transversal of N in G: one g per coset gN, ascending.
std::vector<Elem> left_transversal(const FiniteGroup& g, const Subgroup& n) {
  std::vector<char> covered(g.order(), 0);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    reps.push_back(x);
    for (Elem m : n.members()) covered[g.mul(x, m)] = 1;
  }
  return reps;
}

std::vector<Elem> conjugate_members(const FiniteGroup& g, const Subgroup& h, Elem x) {
  std::vector<Elem> out;
  out.reserve(h.size());
  for (Elem k : h.members()) out.push_back(g.conj(x, k));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Subgroup canonical_conjugate(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  if (h.size() == 1 || h.size() == g.order()) return h;
  const Subgroup n = normalizer(h);
  if (n.size() == g.order()) return h;
  std::vector<Elem> best = h.members();
  Elem best_x = g.identity();
  std::vector<Elem> scratch;
  for (Elem x : left_transversal(g, n)) {
    scratch = conjugate_members(g, h, x);
    if (scratch < best) {
      best.swap(scratch);
      best_x = x;
    }
  }
  if (best_x == g.identity()) return h;
  std::vector<Elem> gens;
  for (Elem k : h.known_generators()) gens.push_back(g.conj(best_x, k));
  return Subgroup::trusted(h.parent(), std::move(best), std::move(gens));
}

std::vector<Subgroup> conjugacy_class(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  std::vector<Subgroup> out;
  for (Elem x : left_transversal(g, normalizer(h))) {
    out.push_back(Subgroup::trusted(h.parent(), conjugate_members(g, h, x)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> enumerate_subgroups(const GroupPtr& gp, Conjugacy mode,
                                          const EnumerationOptions& options) {
  const FiniteGroup& g = *gp;
  const bool up_to_conjugacy = mode == Conjugacy::kUpToConjugacy;
  const std::size_t cap = up_to_conjugacy ? options.cap_classes : options.cap_all;
  if (g.order() > cap) {
    throw CapExceeded("subgroup enumeration: group order " + std::to_string(g.order()) +
                          " exceeds cap " + std::to_string(cap),
                      g.order());
  }

  std::vector<Subgroup> found{Subgroup::trivial(gp)};
  std::unordered_set<std::vector<Elem>, MemberHash> known{found.front().members()};
  std::unordered_set<std::vector<Elem>, MemberHash> raw_seen{found.front().members()};

  for (std::size_t i = 0; i < found.size(); ++i) {
    const Subgroup h = found[i];
    if (h.size() == g.order()) continue;
    std::vector<Elem> n_gens;
    if (up_to_conjugacy) n_gens = generating_set(normalizer(h));
    std::vector<Elem> candidates =
        augmentation_candidates(g, h.mask(), generating_set(h), n_gens);
    if (options.shuffle_seed != 0) {
      std::mt19937_64 rng(options.shuffle_seed + i);
      std::shuffle(candidates.begin(), candidates.end(), rng);
    }
    for (Elem x : candidates) {
      Subgroup k = extend(h, x);
      if (!raw_seen.insert(k.members()).second) continue;
      if (up_to_conjugacy) k = canonical_conjugate(k);
      if (known.insert(k.members()).second) found.push_back(std::move(k));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace galent
