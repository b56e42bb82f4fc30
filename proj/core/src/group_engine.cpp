#include "galent/group_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "galent/error.hpp"

namespace galent {
namespace {

// Extends `list` (closed under gens[0..first_new)) to closure under all gens.
void grow(const FiniteGroup& g, std::vector<Elem>& list, std::vector<char>& in,
          std::span<const Elem> gens, std::size_t first_new) {
  const std::size_t old_size = list.size();
  for (std::size_t i = 0; i < old_size; ++i) {
    for (std::size_t k = first_new; k < gens.size(); ++k) {
      Elem y = g.mul(list[i], gens[k]);
      if (!in[y]) {
        in[y] = 1;
        list.push_back(y);
      }
    }
  }
  for (std::size_t i = old_size; i < list.size(); ++i) {
    for (Elem s : gens) {
      Elem y = g.mul(list[i], s);
      if (!in[y]) {
        in[y] = 1;
        list.push_back(y);
      }
    }
  }
}

std::vector<Elem> sorted(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

void check_same_parent(const Subgroup& x, const Subgroup& y, const char* what) {
  if (x.parent() != y.parent()) {
    throw PreconditionError(std::string(what) + ": subgroups live in different groups");
  }
}

std::uint64_t checked_product_order(const GroupPtr& a, const GroupPtr& b, std::size_t cap) {
  const std::uint64_t n = std::uint64_t{a->order()} * b->order();
  if (n > cap) {
    throw CapExceeded("product order " + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap),
                      n);
  }
  return n;
}

}  // namespace

// --- construction -----------------------------------------------------------

GroupPtr generate_group(std::span<const Mat2> generators, std::uint32_t modulus,
                        std::size_t cap) {
  for (const auto& m : generators) {
    if (m.modulus() != modulus) {
      throw PreconditionError("generate_group: generator " + m.to_string() + " has modulus " +
                              std::to_string(m.modulus()) + ", expected " +
                              std::to_string(modulus));
    }
  }
  std::vector<Mat2> elems{Mat2::identity(modulus)};
  std::unordered_set<std::uint64_t> seen{elems.front().code()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : generators) {
      Mat2 y = elems[i] * s;
      if (seen.insert(y.code()).second) {
        elems.push_back(y);
        if (elems.size() > cap) {
          throw CapExceeded("generate_group: closure exceeds order cap " + std::to_string(cap),
                            elems.size());
        }
      }
    }
  }
  return FiniteGroup::from_matrices(std::move(elems));
}

namespace {
template <class Pred>
GroupPtr linear_group(std::uint32_t n, std::size_t cap, Pred keep) {
  if (n < 2 || n > 256) throw PreconditionError("linear group modulus must lie in [2, 256]");
  std::vector<Mat2> elems;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        for (std::uint32_t d = 0; d < n; ++d) {
          const std::uint64_t det = (std::uint64_t{a} * d + std::uint64_t{n} * n - std::uint64_t{b} * c % n) % n;
          if (!keep(det)) continue;
          elems.emplace_back(a, b, c, d, n);
          if (elems.size() > cap) {
            throw CapExceeded("linear group of modulus " + std::to_string(n) +
                                  " exceeds order cap " + std::to_string(cap),
                              elems.size());
          }
        }
  return FiniteGroup::from_matrices(std::move(elems));
}
}  // namespace

GroupPtr general_linear_group(std::uint32_t n, std::size_t cap) {
  return linear_group(n, cap, [n](std::uint64_t det) { return std::gcd(det, std::uint64_t{n}) == 1; });
}

GroupPtr special_linear_group(std::uint32_t n, std::size_t cap) {
  return linear_group(n, cap, [](std::uint64_t det) { return det == 1; });
}

GroupPtr cyclic_group(std::uint32_t n) {
  if (n == 0 || n > kCayleyTableThreshold) throw PreconditionError("cyclic_group: order out of range");
  std::vector<Elem> table(std::size_t{n} * n);
  std::vector<ElementKey> keys(n);
  for (Elem i = 0; i < n; ++i) {
    keys[i] = {static_cast<std::int32_t>(i)};
    for (Elem j = 0; j < n; ++j) table[std::size_t{i} * n + j] = (i + j) % n;
  }
  return FiniteGroup::from_table(std::move(table), std::move(keys));
}

GroupPtr metacyclic_group(std::uint32_t n, std::uint32_t twist, std::uint32_t action) {
  if (n == 0 || n > 1024) throw PreconditionError("metacyclic_group: n out of range");
  const std::uint32_t m = 2 * n;
  auto index = [n](std::uint32_t i, std::uint32_t j) { return j * n + i; };
  std::vector<Elem> table(std::size_t{m} * m);
  std::vector<ElementKey> keys(m);
  for (std::uint32_t j1 = 0; j1 < 2; ++j1)
    for (std::uint32_t i1 = 0; i1 < n; ++i1) {
      keys[index(i1, j1)] = {static_cast<std::int32_t>(j1), static_cast<std::int32_t>(i1)};
      for (std::uint32_t j2 = 0; j2 < 2; ++j2)
        for (std::uint32_t i2 = 0; i2 < n; ++i2) {
          // r^i1 s^j1 r^i2 s^j2 = r^(i1 + i2*action^j1) s^(j1+j2)
          std::uint64_t i = i1 + (j1 ? std::uint64_t{i2} * action : i2);
          std::uint32_t j = j1 + j2;
          if (j == 2) {
            i += twist;
            j = 0;
          }
          table[std::size_t{index(i1, j1)} * m + index(i2, j2)] = index(static_cast<std::uint32_t>(i % n), j);
        }
    }
  return FiniteGroup::from_table(std::move(table), std::move(keys));
}

ProductGroup direct_product(GroupPtr a, GroupPtr b, std::size_t cap) {
  checked_product_order(a, b, cap);
  ProductGroup prod;
  prod.group = FiniteGroup::full_product(a, b);
  prod.left = a;
  prod.right = b;
  std::vector<Elem> left, right;
  for (Elem x = 0; x < a->order(); ++x) left.push_back(*prod.group->find_pair(x, b->identity()));
  for (Elem y = 0; y < b->order(); ++y) right.push_back(*prod.group->find_pair(a->identity(), y));
  prod.left_factor = Subgroup::trusted(prod.group, sorted(std::move(left)));
  prod.right_factor = Subgroup::trusted(prod.group, sorted(std::move(right)));
  return prod;
}

ProductGroup crt_product(const GroupPtr& a, const GroupPtr& b, std::size_t cap) {
  if (!a->is_matrix_group() || !b->is_matrix_group() ||
      std::gcd(a->modulus(), b->modulus()) != 1) {
    throw PreconditionError("crt_product: needs matrix groups with coprime moduli");
  }
  checked_product_order(a, b, cap);
  std::vector<Mat2> elems;
  elems.reserve(a->order() * b->order());
  for (Elem x = 0; x < a->order(); ++x)
    for (Elem y = 0; y < b->order(); ++y) elems.push_back(crt_join(a->matrix(x), b->matrix(y)));
  ProductGroup prod;
  prod.group = FiniteGroup::from_matrices(std::move(elems));
  prod.left = a;
  prod.right = b;
  const Mat2 ia = Mat2::identity(a->modulus());
  const Mat2 ib = Mat2::identity(b->modulus());
  std::vector<Elem> left, right;
  for (Elem x = 0; x < a->order(); ++x) left.push_back(*prod.group->find(crt_join(a->matrix(x), ib)));
  for (Elem y = 0; y < b->order(); ++y) right.push_back(*prod.group->find(crt_join(ia, b->matrix(y))));
  prod.left_factor = Subgroup::trusted(prod.group, sorted(std::move(left)));
  prod.right_factor = Subgroup::trusted(prod.group, sorted(std::move(right)));
  return prod;
}

ProductGroup natural_product(const GroupPtr& a, const GroupPtr& b, std::size_t cap) {
  if (a->is_matrix_group() && b->is_matrix_group() && std::gcd(a->modulus(), b->modulus()) == 1) {
    return crt_product(a, b, cap);
  }
  return direct_product(a, b, cap);
}

std::pair<Elem, Elem> product_components(const ProductGroup& prod, Elem x) {
  if (prod.group->is_pair_group()) return prod.group->components(x);
  const Mat2& m = prod.group->matrix(x);
  return {*prod.left->find(m.reduce(prod.left->modulus())),
          *prod.right->find(m.reduce(prod.right->modulus()))};
}

Elem product_element(const ProductGroup& prod, Elem a, Elem b) {
  if (prod.group->is_pair_group()) return *prod.group->find_pair(a, b);
  return *prod.group->find(crt_join(prod.left->matrix(a), prod.right->matrix(b)));
}

// --- subgroup calculus ------------------------------------------------------

Subgroup subgroup_closure(const GroupPtr& g, std::span<const Elem> seed) {
  std::vector<Elem> gens;
  for (Elem s : seed) {
    if (s >= g->order()) throw PreconditionError("subgroup_closure: seed index out of range");
    if (s != g->identity() && std::find(gens.begin(), gens.end(), s) == gens.end()) gens.push_back(s);
  }
  std::vector<char> in(g->order(), 0);
  std::vector<Elem> list{g->identity()};
  in[g->identity()] = 1;
  grow(*g, list, in, gens, 0);
  return Subgroup::trusted(g, sorted(std::move(list)), std::move(gens));
}

std::vector<Elem> generating_set(const Subgroup& h) {
  if (!h.known_generators().empty() || h.size() == 1) return h.known_generators();
  const FiniteGroup& g = *h.parent();
  std::vector<Elem> by_order = h.members();
  std::stable_sort(by_order.begin(), by_order.end(), [&](Elem x, Elem y) {
    return g.element_order(x) > g.element_order(y);
  });
  std::vector<Elem> gens;
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> list{g.identity()};
  in[g.identity()] = 1;
  for (Elem x : by_order) {
    if (list.size() == h.size()) break;
    if (in[x]) continue;
    gens.push_back(x);
    grow(g, list, in, gens, gens.size() - 1);
  }
  return gens;
}

Subgroup join(const Subgroup& x, const Subgroup& y) {
  check_same_parent(x, y, "join");
  if (is_subset(y, x)) return x;
  if (is_subset(x, y)) return y;
  std::vector<Elem> gens = generating_set(x);
  const std::size_t first_new = gens.size();
  for (Elem s : generating_set(y)) gens.push_back(s);
  std::vector<Elem> list = x.members();
  std::vector<char> in = x.mask();
  grow(*x.parent(), list, in, gens, first_new);
  return Subgroup::trusted(x.parent(), sorted(std::move(list)), std::move(gens));
}

Subgroup intersection(const Subgroup& x, const Subgroup& y) {
  check_same_parent(x, y, "intersection");
  std::vector<Elem> out;
  std::set_intersection(x.members().begin(), x.members().end(), y.members().begin(),
                        y.members().end(), std::back_inserter(out));
  return Subgroup::trusted(x.parent(), std::move(out));
}

bool is_subset(const Subgroup& x, const Subgroup& y) {
  return x.size() <= y.size() && std::includes(y.members().begin(), y.members().end(),
                                               x.members().begin(), x.members().end());
}

Subgroup conjugate(const Subgroup& h, Elem g) {
  const FiniteGroup& grp = *h.parent();
  std::vector<Elem> out;
  out.reserve(h.size());
  for (Elem x : h.members()) out.push_back(grp.conj(g, x));
  std::vector<Elem> gens;
  for (Elem x : h.known_generators()) gens.push_back(grp.conj(g, x));
  return Subgroup::trusted(h.parent(), sorted(std::move(out)), std::move(gens));
}

Subgroup normalizer(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto gens = generating_set(h);
  const auto in = h.mask();
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool ok = true;
    for (Elem k : gens) {
      if (!in[g.conj(x, k)]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup::trusted(h.parent(), std::move(out));
}

bool is_normal_in(const Subgroup& n, const Subgroup& h) {
  check_same_parent(n, h, "is_normal_in");
  if (!is_subset(n, h)) return false;
  const FiniteGroup& g = *h.parent();
  const auto in = n.mask();
  const auto ngens = generating_set(n);
  for (Elem x : generating_set(h)) {
    for (Elem k : ngens) {
      if (!in[g.conj(x, k)]) return false;
    }
  }
  return true;
}

Subgroup normal_closure(const Subgroup& h, std::span<const Elem> seed) {
  const GroupPtr& gp = h.parent();
  const FiniteGroup& g = *gp;
  const auto hgens = generating_set(h);
  std::vector<Elem> gens;
  for (Elem s : seed) {
    if (s != g.identity()) gens.push_back(s);
  }
  std::vector<char> in(g.order(), 0);
  std::vector<Elem> list{g.identity()};
  in[g.identity()] = 1;
  grow(g, list, in, gens, 0);
  // Add conjugates of generators by generators of h until stable.
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (Elem x : hgens) {
      Elem c = g.conj(x, gens[k]);
      if (!in[c]) {
        gens.push_back(c);
        grow(g, list, in, gens, gens.size() - 1);
      }
    }
  }
  return Subgroup::trusted(gp, sorted(std::move(list)), std::move(gens));
}

std::vector<Elem> conjugacy_class_representatives(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto hgens = generating_set(h);
  std::vector<char> done(g.order(), 0);
  std::vector<Elem> reps;
  std::vector<Elem> orbit;
  for (Elem m : h.members()) {
    if (done[m]) continue;
    reps.push_back(m);
    orbit.assign(1, m);
    done[m] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      for (Elem x : hgens) {
        Elem c = g.conj(x, orbit[i]);
        if (!done[c]) {
          done[c] = 1;
          orbit.push_back(c);
        }
      }
    }
  }
  return reps;
}

std::vector<Subgroup> normal_subgroups(const Subgroup& h) {
  const auto reps = conjugacy_class_representatives(h);
  std::vector<Subgroup> found{Subgroup::trivial(h.parent())};
  std::unordered_set<std::vector<Elem>, MemberHash> seen{found.front().members()};
  for (std::size_t i = 0; i < found.size(); ++i) {
    const auto in = found[i].mask();
    for (Elem c : reps) {
      if (in[c]) continue;
      std::vector<Elem> seed = generating_set(found[i]);
      seed.push_back(c);
      Subgroup n = normal_closure(h, seed);
      if (seen.insert(n.members()).second) found.push_back(std::move(n));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

Subgroup center(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto gens = generating_set(h);
  std::vector<Elem> out;
  for (Elem x : h.members()) {
    bool central = true;
    for (Elem s : gens) {
      if (g.mul(x, s) != g.mul(s, x)) {
        central = false;
        break;
      }
    }
    if (central) out.push_back(x);
  }
  return Subgroup::trusted(h.parent(), std::move(out));
}

Subgroup derived_subgroup(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto gens = generating_set(h);
  std::vector<Elem> commutators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Elem a = gens[i], b = gens[j];
      commutators.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    }
  return normal_closure(h, commutators);
}

bool is_abelian(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  const auto gens = generating_set(h);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (g.mul(gens[i], gens[j]) != g.mul(gens[j], gens[i])) return false;
  return true;
}

std::vector<std::uint64_t> abelian_invariants_from_orders(std::span<const std::uint32_t> orders) {
  const std::uint64_t n = orders.size();
  // prime -> list of elementary divisors (prime powers), descending
  std::map<std::uint64_t, std::vector<std::uint64_t>> elementary;
  std::uint64_t rest = n;
  for (std::uint64_t p = 2; p <= rest; ++p) {
    if (rest % p != 0) continue;
    std::uint64_t pk_max = 1;
    while (rest % p == 0) {
      rest /= p;
      pk_max *= p;
    }
    // s_i = log_p |A[p^i]|
    std::vector<std::uint64_t> s{0};
    for (std::uint64_t pi = p; pi <= pk_max; pi *= p) {
      std::uint64_t count = 0;
      for (auto o : orders) count += (pi % o == 0) ? 1 : 0;
      std::uint64_t e = 0;
      while (count > 1) {
        count /= p;
        ++e;
      }
      s.push_back(e);
    }
    // r_i = number of cyclic factors of order >= p^i
    std::vector<std::uint64_t> r(s.size() + 1, 0);
    for (std::size_t i = 1; i < s.size(); ++i) r[i] = s[i] - s[i - 1];
    auto& divs = elementary[p];
    std::uint64_t pi = 1;
    for (std::size_t i = 1; i < s.size(); ++i) {
      pi *= p;
      for (std::uint64_t k = 0; k < r[i] - r[i + 1]; ++k) divs.push_back(pi);
    }
    std::sort(divs.rbegin(), divs.rend());
  }
  std::size_t width = 0;
  for (auto& [p, divs] : elementary) width = std::max(width, divs.size());
  std::vector<std::uint64_t> inv(width, 1);
  for (auto& [p, divs] : elementary) {
    for (std::size_t i = 0; i < divs.size(); ++i) inv[width - 1 - i] *= divs[i];
  }
  return inv;
}

std::vector<std::uint64_t> abelianization_invariants(const Subgroup& h, const Subgroup& derived) {
  // Orders in H/H': for x in H, least k with x^k in H', one x per coset.
  const FiniteGroup& g = *h.parent();
  const auto in = derived.mask();
  std::vector<std::uint32_t> orders;
  std::vector<char> seen(g.order(), 0);
  for (Elem x : h.members()) {
    if (seen[x]) continue;
    for (Elem d : derived.members()) seen[g.mul(x, d)] = 1;
    std::uint32_t k = 1;
    Elem y = x;
    while (!in[y]) {
      y = g.mul(y, x);
      ++k;
    }
    orders.push_back(k);
  }
  return abelian_invariants_from_orders(orders);
}

NormalStructure normal_structure(const Subgroup& h) {
  NormalStructure ns;
  ns.normal_subgroups = normal_subgroups(h);
  ns.center = center(h);
  ns.derived = derived_subgroup(h);
  ns.abelian_invariants = abelianization_invariants(h, ns.derived);
  return ns;
}

GroupPtr quotient_group(const Subgroup& h, const Subgroup& n) {
  check_same_parent(h, n, "quotient_group");
  if (!is_subset(n, h)) throw PreconditionError("quotient_group: N is not contained in H");
  if (!is_normal_in(n, h)) throw PreconditionError("quotient_group: N is not normal in H");
  const FiniteGroup& g = *h.parent();
  constexpr Elem kNone = ~Elem{0};
  std::vector<Elem> coset_of(g.order(), kNone);
  std::vector<Elem> reps;
  for (Elem x : h.members()) {
    if (coset_of[x] != kNone) continue;
    const Elem label = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem k : n.members()) coset_of[g.mul(x, k)] = label;
  }
  return FiniteGroup::from_cosets(h.parent(), std::move(reps), std::move(coset_of));
}

GroupPtr subgroup_as_group(const Subgroup& h) {
  const FiniteGroup& g = *h.parent();
  switch (g.representation()) {
    case Representation::kMatrix: {
      std::vector<Mat2> mats;
      mats.reserve(h.size());
      for (Elem x : h.members()) mats.push_back(g.matrix(x));
      return FiniteGroup::from_matrices(std::move(mats));
    }
    case Representation::kPair: {
      std::vector<std::pair<Elem, Elem>> pairs;
      pairs.reserve(h.size());
      for (Elem x : h.members()) pairs.push_back(g.components(x));
      return FiniteGroup::from_pairs(g.left_factor(), g.right_factor(), std::move(pairs));
    }
    case Representation::kCoset:
    case Representation::kAbstract:
      break;
  }
  const std::size_t m = h.size();
  if (m > kCayleyTableThreshold) {
    throw CapExceeded("subgroup_as_group: abstract subgroup too large for a table", m);
  }
  std::vector<Elem> local(g.order(), 0);
  for (Elem i = 0; i < m; ++i) local[h.members()[i]] = i;
  std::vector<Elem> table(m * m);
  std::vector<ElementKey> keys(m);
  for (Elem i = 0; i < m; ++i) {
    keys[i] = g.key(h.members()[i]);
    for (Elem j = 0; j < m; ++j) table[std::size_t{i} * m + j] = local[g.mul(h.members()[i], h.members()[j])];
  }
  return FiniteGroup::from_table(std::move(table), std::move(keys));
}

// --- fiber products ---------------------------------------------------------

GroupPtr fiber_product(const Subgroup& n_a, const Subgroup& n_b, const ElementMap& phi,
                       std::size_t cap) {
  const GroupPtr& a = n_a.parent();
  const GroupPtr& b = n_b.parent();
  const Subgroup whole_a = Subgroup::whole(a);
  const Subgroup whole_b = Subgroup::whole(b);
  GroupPtr qa = quotient_group(whole_a, n_a);
  GroupPtr qb = quotient_group(whole_b, n_b);
  if (!is_isomorphism(*qa, *qb, phi)) {
    throw PreconditionError("fiber_product: quotient map is not an isomorphism");
  }
  const std::uint64_t order = std::uint64_t{a->order()} * n_b.size();
  if (order > cap) throw CapExceeded("fiber_product: order exceeds cap", order);
  std::vector<std::vector<Elem>> by_coset(qb->order());
  for (Elem y = 0; y < b->order(); ++y) by_coset[qb->coset_of(y)].push_back(y);
  const bool crt = a->is_matrix_group() && b->is_matrix_group() &&
                   std::gcd(a->modulus(), b->modulus()) == 1;
  if (crt) {
    std::vector<Mat2> mats;
    for (Elem x = 0; x < a->order(); ++x)
      for (Elem y : by_coset[phi[qa->coset_of(x)]]) mats.push_back(crt_join(a->matrix(x), b->matrix(y)));
    return FiniteGroup::from_matrices(std::move(mats));
  }
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < a->order(); ++x)
    for (Elem y : by_coset[phi[qa->coset_of(x)]]) pairs.emplace_back(x, y);
  return FiniteGroup::from_pairs(a, b, std::move(pairs));
}

Subgroup fiber_subgroup(const ProductGroup& prod, const Subgroup& p_a, const Subgroup& k_a,
                        const Subgroup& p_b, const Subgroup& k_b, const ElementMap& phi) {
  GroupPtr qa = quotient_group(p_a, k_a);
  GroupPtr qb = quotient_group(p_b, k_b);
  if (!is_isomorphism(*qa, *qb, phi)) {
    throw PreconditionError("fiber_subgroup: section map is not an isomorphism");
  }
  std::vector<std::vector<Elem>> by_coset(qb->order());
  for (Elem y : p_b.members()) by_coset[qb->coset_of(y)].push_back(y);
  std::vector<Elem> members;
  members.reserve(p_a.size() * k_b.size());
  for (Elem x : p_a.members())
    for (Elem y : by_coset[phi[qa->coset_of(x)]]) members.push_back(product_element(prod, x, y));
  return Subgroup::trusted(prod.group, sorted(std::move(members)));
}

}  // namespace galent
