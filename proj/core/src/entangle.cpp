#include "galent/entangle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "galent/error.hpp"

namespace galent {
namespace {

Subgroup kernel_mod(const GroupPtr& g, std::uint32_t m) {
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x)
    if (g->matrix(x).reduce(m).is_identity()) members.push_back(x);
  return Subgroup::trusted(g, std::move(members));
}

void finish_context(EntContext& ctx) {
  const Subgroup whole = Subgroup::whole(ctx.group);
  if (!is_normal_in(ctx.kernel_p, whole) || !is_normal_in(ctx.kernel_q, whole)) {
    throw PreconditionError("context kernels must be normal in G");
  }
  if (intersection(ctx.kernel_p, ctx.kernel_q).size() != 1) {
    throw PreconditionError("context kernels must intersect trivially");
  }
  ctx.join = join(ctx.kernel_p, ctx.kernel_q);
}

void check_prime_pair(std::uint32_t p, std::uint32_t q) {
  if (p == q) throw PreconditionError("p and q must be distinct primes");
  if (!is_prime(p) || !is_prime(q)) throw PreconditionError("p and q must be primes");
}

}  // namespace

EntContext make_context(GroupPtr g, std::uint32_t p, std::uint32_t q) {
  check_prime_pair(p, q);
  if (!g->is_matrix_group() || g->modulus() != p * q) {
    throw PreconditionError("context group must be a matrix group mod p*q");
  }
  EntContext ctx;
  ctx.p = p;
  ctx.q = q;
  ctx.group = std::move(g);
  ctx.kernel_p = kernel_mod(ctx.group, p);
  ctx.kernel_q = kernel_mod(ctx.group, q);
  finish_context(ctx);
  return ctx;
}

EntContext make_context(std::span<const Mat2> generators, std::uint32_t p, std::uint32_t q,
                        std::size_t cap) {
  check_prime_pair(p, q);
  return make_context(generate_group(generators, p * q, cap), p, q);
}

EntContext make_product_context(GroupPtr a, GroupPtr b, std::size_t cap) {
  EntContext ctx;
  if (a->is_matrix_group() && b->is_matrix_group() && a->modulus() != b->modulus() &&
      is_prime(a->modulus()) && is_prime(b->modulus())) {
    ctx.p = a->modulus();
    ctx.q = b->modulus();
  }
  ProductGroup prod = natural_product(a, b, cap);
  ctx.group = prod.group;
  // N_p: trivial in the mod-p component, i.e. 1 x B.
  ctx.kernel_p = prod.right_factor;
  ctx.kernel_q = prod.left_factor;
  ctx.join = Subgroup::whole(ctx.group);
  ctx.product = std::move(prod);
  return ctx;
}

EntContext make_context(Subgroup n_p, Subgroup n_q) {
  if (n_p.parent() != n_q.parent()) throw PreconditionError("kernels live in different groups");
  EntContext ctx;
  ctx.group = n_p.parent();
  ctx.kernel_p = std::move(n_p);
  ctx.kernel_q = std::move(n_q);
  finish_context(ctx);
  return ctx;
}

namespace {

Subgroup pair_kernel(const GroupPtr& g, bool left_trivial) {
  std::vector<Elem> members;
  for (Elem x = 0; x < g->order(); ++x) {
    auto [l, r] = g->components(x);
    if (left_trivial ? l == g->left_factor()->identity() : r == g->right_factor()->identity())
      members.push_back(x);
  }
  return Subgroup::trusted(g, std::move(members));
}

}  // namespace

EntContext make_fiber_context(const GroupPtr& a, const GroupPtr& b, std::size_t m,
                              std::size_t cap) {
  const Subgroup wa = Subgroup::whole(a), wb = Subgroup::whole(b);
  for (const Subgroup& na : normal_subgroups(wa)) {
    if (na.size() * m != a->order()) continue;
    GroupPtr qa = quotient_group(wa, na);
    for (const Subgroup& nb : normal_subgroups(wb)) {
      if (nb.size() * m != b->order()) continue;
      GroupPtr qb = quotient_group(wb, nb);
      auto phi = find_isomorphism(*qa, *qb);
      if (!phi) continue;
      GroupPtr g = fiber_product(na, nb, *phi, cap);
      if (g->is_pair_group()) return make_context(pair_kernel(g, true), pair_kernel(g, false));
      return make_context(g, a->modulus(), b->modulus());
    }
  }
  throw PreconditionError("no common quotient of order " + std::to_string(m));
}

std::uint64_t d_value(const EntContext& ctx) {
  return std::gcd(std::uint64_t{ctx.image_p_order()}, std::uint64_t{ctx.image_q_order()});
}

Subgroup base_change_kernel(const EntContext& ctx, const Subgroup& h) {
  return join(intersection(h, ctx.kernel_p), intersection(h, ctx.kernel_q));
}

GroupPtr base_change_quotient(const EntContext& ctx, const Subgroup& h) {
  return quotient_group(h, base_change_kernel(ctx, h));
}

std::size_t base_change_order(const EntContext& ctx, const Subgroup& h) {
  return h.size() / base_change_kernel(ctx, h).size();
}

IsoClass base_change_type(const EntContext& ctx, const Subgroup& h, IsoClassifier* classifier) {
  const Subgroup k = base_change_kernel(ctx, h);
  if (k.size() == h.size()) return IsoClass{"1", 1, true};
  GroupPtr quotient = quotient_group(h, k);
  return classifier ? classifier->identify(*quotient) : identify(*quotient);
}

IsoClass entanglement_type(const EntContext& ctx, IsoClassifier* classifier) {
  return base_change_type(ctx, Subgroup::whole(ctx.group), classifier);
}

bool divisibility_check(const EntContext& ctx, const Subgroup& h) {
  return d_value(ctx) % base_change_order(ctx, h) == 0;
}

bool lk_identity_check(const EntContext& ctx, const Subgroup& h) {
  const std::uint64_t n = ctx.order();
  const std::uint64_t lhs = std::uint64_t{base_change_order(ctx, h)} *
                            (n / join(h, ctx.kernel_p).size()) *
                            (n / join(h, ctx.kernel_q).size());
  const std::uint64_t rhs = std::uint64_t{n / ctx.join.size()} * (n / h.size());
  return lhs == rhs;
}

// --- entangling subgroups ---------------------------------------------------

std::vector<EntanglingSubgroup> entangling_subgroups(const Subgroup& g1, const Subgroup& g2,
                                                     Conjugacy mode) {
  if (g1.parent() != g2.parent()) throw PreconditionError("G1 and G2 live in different groups");
  const GroupPtr& f = g1.parent();
  const Subgroup stabilizer = intersection(normalizer(g1), normalizer(g2));
  const bool whole_group_acts = stabilizer.size() == f->order();
  const Conjugacy scan =
      mode == Conjugacy::kUpToConjugacy && whole_group_acts ? Conjugacy::kUpToConjugacy
                                                            : Conjugacy::kAll;
  IsoClassifier classifier;
  std::vector<EntanglingSubgroup> out;
  std::set<std::vector<Elem>> orbit_reps;
  for (const Subgroup& h : enumerate_subgroups(f, scan)) {
    Subgroup m1 = intersection(h, g1);
    if (m1.size() == h.size()) continue;
    if (!(m1 == intersection(h, g2))) continue;
    Subgroup rep = h;
    if (mode == Conjugacy::kUpToConjugacy && !whole_group_acts) {
      for (Elem x : stabilizer.members()) {
        Subgroup c = conjugate(h, x);
        if (c.members() < rep.members()) rep = std::move(c);
      }
      if (!orbit_reps.insert(rep.members()).second) continue;
      m1 = intersection(rep, g1);
    }
    EntanglingSubgroup e;
    e.meet_1 = m1.size();
    e.meet_2 = m1.size();
    if (is_normal_in(m1, rep)) e.type = classifier.identify(*quotient_group(rep, m1));
    e.h = std::move(rep);
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(),
            [](const EntanglingSubgroup& x, const EntanglingSubgroup& y) { return x.h < y.h; });
  return out;
}

bool groupcomp_verify(const Subgroup& g1, const Subgroup& g2, const Subgroup& h) {
  if (g1.parent() != g2.parent() || h.parent() != g1.parent()) {
    throw PreconditionError("groupcomp: subgroups live in different groups");
  }
  const Subgroup m1 = intersection(h, g1);
  if (!(m1 == intersection(h, g2)) || m1.size() == h.size()) {
    throw PreconditionError("groupcomp: needs H ∩ G1 = H ∩ G2 strictly inside H");
  }
  const Subgroup whole = Subgroup::whole(h.parent());
  const Subgroup common = intersection(g1, g2);
  if (!is_normal_in(h, whole) && !is_normal_in(common, whole)) {
    throw PreconditionError("groupcomp: needs H or G1 ∩ G2 normal");
  }
  const Subgroup k = join(h, common);
  const Subgroup k1 = intersection(k, g1);
  return k1 == intersection(k, g2) && k1.size() < k.size();
}

// --- witnesses --------------------------------------------------------------

namespace {

// Least label of order `ell` in `q`; exists by Cauchy when ell divides |q|.
Elem cauchy_element(const FiniteGroup& q, std::uint32_t ell) {
  for (Elem x = 0; x < q.order(); ++x) {
    const std::uint32_t o = q.element_order(x);
    if (o % ell == 0) return q.pow(x, o / ell);
  }
  throw InternalError("no element of order " + std::to_string(ell));
}

}  // namespace

Subgroup cyclic_witness(const EntContext& ctx, std::uint32_t ell) {
  if (!is_prime(ell)) throw PreconditionError("cyclic_witness: ell must be prime");
  const std::uint64_t d = d_value(ctx);
  if (d % ell != 0) {
    throw PreconditionError("cyclic_witness: " + std::to_string(ell) + " does not divide d = " +
                            std::to_string(d));
  }
  const GroupPtr& g = ctx.group;
  const Subgroup whole = Subgroup::whole(g);
  Subgroup h;
  if ((ctx.order() / ctx.join.size()) % ell == 0) {
    // Preimage of an order-ell subgroup of G/J.
    GroupPtr top = quotient_group(whole, ctx.join);
    const Elem x = top->coset_representative(cauchy_element(*top, ell));
    const Elem seed[] = {x};
    h = join(ctx.join, subgroup_closure(g, seed));
  } else {
    // ell divides both |J/N_p| and |J/N_q|. The cosets g1 N_p and g2 N_q meet
    // in exactly one element, since J = N_p N_q with N_p ∩ N_q = 1.
    GroupPtr jp = quotient_group(ctx.join, ctx.kernel_p);
    GroupPtr jq = quotient_group(ctx.join, ctx.kernel_q);
    const Elem g1 = cauchy_element(*jp, ell);
    const Elem g2 = cauchy_element(*jq, ell);
    const Elem r1 = jp->coset_representative(g1);
    std::optional<Elem> x;
    for (Elem n : ctx.kernel_p.members()) {
      const Elem y = g->mul(r1, n);
      if (jq->coset_of(y) == g2) {
        x = y;
        break;
      }
    }
    if (!x) throw InternalError("cyclic_witness: cosets do not meet");
    const Elem seed[] = {*x};
    h = subgroup_closure(g, seed);
  }
  const IsoClass t = base_change_type(ctx, h);
  if (t.label != "Z/" + std::to_string(ell)) {
    throw InternalError("cyclic_witness: constructed subgroup has type " + t.label);
  }
  return h;
}

std::pair<Mat2, Mat2> s3_generators(std::uint32_t q) {
  return {Mat2(1, 1, 0, -1, q), Mat2(-1, 0, 1, 1, q)};
}

S3Witness s3_witness(std::uint32_t q) {
  if (q == 2) throw PreconditionError("s3_witness: q must be odd (p = 2 is the other prime)");
  if (!is_prime(q)) throw PreconditionError("s3_witness: q must be an odd prime");
  const auto [sigma_q, tau_q] = s3_generators(q);
  const Mat2 sigma = s3_generators(2).first;
  const Mat2 tau = s3_generators(2).second;
  S3Witness w;
  w.q = q;
  w.generators = {crt_join(sigma, sigma_q), crt_join(tau, tau_q)};
  w.group = generate_group(w.generators, 2 * q);
  w.isomorphic_to_s3 = identify(*w.group).label == "S3";
  std::size_t mod2_kernel = 0, modq_kernel = 0;
  std::set<Mat2> mod2_image;
  for (Elem x = 0; x < w.group->order(); ++x) {
    const Mat2& m = w.group->matrix(x);
    if (m.reduce(2).is_identity()) ++mod2_kernel;
    if (m.reduce(q).is_identity()) ++modq_kernel;
    mod2_image.insert(m.reduce(2));
  }
  w.meets_mod2_kernel_trivially = mod2_kernel == 1;
  w.meets_modq_kernel_trivially = modq_kernel == 1;
  w.projects_onto_gl2_2 = mod2_image.size() == 6;
  return w;
}

// --- Ent sets ---------------------------------------------------------------

SubgroupEnumerator default_enumerator(EnumerationOptions options) {
  return [options](const GroupPtr& g) {
    return enumerate_subgroups(g, Conjugacy::kUpToConjugacy, options);
  };
}

std::vector<std::string> EntReport::labels() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.type.label);
  return out;
}

bool EntReport::contains(const std::string& label) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const EntEntry& e) { return e.type.label == label; });
}

EntReport ent_set_direct(const EntContext& ctx, const SubgroupEnumerator& enumerate) {
  const auto reps = enumerate ? enumerate(ctx.group) : default_enumerator()(ctx.group);
  IsoClassifier classifier;
  EntReport report;
  report.strategy = "direct";
  report.group_order = ctx.order();
  report.image_p_order = ctx.image_p_order();
  report.image_q_order = ctx.image_q_order();
  report.d = d_value(ctx);
  report.type = entanglement_type(ctx, &classifier);
  report.classes_scanned = reps.size();
  // Representatives come sorted by (size, members), so the first hit per
  // type is the smallest witness.
  for (const Subgroup& h : reps) {
    if (!divisibility_check(ctx, h)) {
      throw InternalError("type order does not divide d for a subgroup of order " +
                          std::to_string(h.size()));
    }
    IsoClass t = base_change_type(ctx, h, &classifier);
    if (report.contains(t.label)) continue;
    EntEntry e;
    e.type = std::move(t);
    e.witness = h;
    e.witness_order = h.size();
    report.entries.push_back(std::move(e));
  }
  for (const auto& e : report.entries) {
    if (!(base_change_type(ctx, e.witness, &classifier) == e.type)) {
      throw InternalError("witness re-verification failed for " + e.type.label);
    }
  }
  std::sort(report.entries.begin(), report.entries.end(),
            [](const EntEntry& x, const EntEntry& y) { return x.type < y.type; });
  return report;
}

// --- the p = 2 case table ---------------------------------------------------

Classification2q classify_2q(const EntContext& ctx, bool compute,
                             const SubgroupEnumerator& enumerate) {
  if (ctx.p != 2 || ctx.q < 3 || !is_prime(ctx.q)) {
    throw PreconditionError("classify_2q: needs a context with p = 2 and q an odd prime");
  }
  Classification2q c;
  c.q = ctx.q;
  c.image_2_order = ctx.image_p_order();
  c.image_q_is_gl2 = ctx.image_q_order() == gl2_prime_order(ctx.q);
  c.untangled = ctx.join.size() == ctx.order();
  c.hypotheses_hold = c.image_q_is_gl2 && c.untangled;
  switch (c.image_2_order) {
    case 6: c.predicted = {"1", "Z/2", "Z/3", "S3"}; break;
    case 3: c.predicted = {"1", "Z/3"}; break;
    case 2: c.predicted = {"1", "Z/2"}; break;
    case 1: c.predicted = {"1"}; break;
    default: throw InternalError("mod-2 image order must divide 6");
  }
  if (compute) {
    const EntReport r = ent_set(ctx, Strategy::kAuto, enumerate);
    c.computed = r.labels();
    static const std::set<std::string> bound = {"1", "Z/2", "Z/3", "S3"};
    c.within_bound = std::all_of(c.computed->begin(), c.computed->end(),
                                 [](const std::string& s) { return bound.count(s) > 0; });
    c.z6_absent = !r.contains("Z/6");
    c.matches = c.hypotheses_hold ? *c.computed == c.predicted : c.within_bound;
  }
  return c;
}

std::uint64_t gl2_order_gcd(std::uint64_t p, std::uint64_t q) {
  return std::gcd(gl2_prime_order(p), gl2_prime_order(q));
}

}  // namespace galent
