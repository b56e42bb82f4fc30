#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "galent/entangle.hpp"
#include "galent/error.hpp"

namespace galent {
namespace {

bool better_section(const Section& x, const Section& y) {
  return std::forward_as_tuple(x.k.size(), x.p, x.k) < std::forward_as_tuple(y.k.size(), y.p, y.k);
}

// A matrix group of reductions of G mod m.
GroupPtr reduction_image(const GroupPtr& g, std::uint32_t m) {
  std::set<Mat2> image;
  for (Elem x = 0; x < g->order(); ++x) image.insert(g->matrix(x).reduce(m));
  return FiniteGroup::from_matrices({image.begin(), image.end()});
}

}  // namespace

std::vector<std::pair<IsoClass, Section>> section_spectrum(const GroupPtr& g,
                                                           std::uint64_t order_bound,
                                                           IsoClassifier& classifier,
                                                           const SubgroupEnumerator& enumerate) {
  const auto reps = enumerate ? enumerate(g) : default_enumerator()(g);
  std::map<std::string, std::pair<IsoClass, Section>> best;
  for (const Subgroup& p : reps) {
    if (order_bound && std::gcd(std::uint64_t{p.size()}, order_bound) == 1 && p.size() > 1) continue;
    for (const Subgroup& k : normal_subgroups(p)) {
      const std::uint64_t m = p.size() / k.size();
      if (order_bound && order_bound % m != 0) continue;
      IsoClass t = m == 1 ? IsoClass{"1", 1, true} : classifier.identify(*quotient_group(p, k));
      Section s{p, k};
      auto it = best.find(t.label);
      if (it == best.end()) {
        std::string label = t.label;
        best.emplace(std::move(label), std::make_pair(std::move(t), std::move(s)));
      } else if (better_section(s, it->second.second)) {
        it->second.second = std::move(s);
      }
    }
  }
  std::vector<std::pair<IsoClass, Section>> out;
  for (auto& [label, entry] : best) out.push_back(std::move(entry));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

EntReport ent_set_goursat(const GroupPtr& a, const GroupPtr& b, const SubgroupEnumerator& enumerate,
                          std::size_t materialize_cap) {
  const std::uint64_t bound = std::gcd(std::uint64_t{a->order()}, std::uint64_t{b->order()});
  IsoClassifier classifier;
  const auto spec_a = section_spectrum(a, bound, classifier, enumerate);
  const auto spec_b = section_spectrum(b, bound, classifier, enumerate);

  EntReport report;
  report.strategy = "goursat";
  report.group_order = a->order() * b->order();
  report.image_p_order = a->order();
  report.image_q_order = b->order();
  report.d = bound;
  report.type = IsoClass{"1", 1, true};

  std::optional<EntContext> ctx;
  if (report.group_order <= materialize_cap) ctx = make_product_context(a, b, materialize_cap);

  std::map<std::string, const Section*> right;
  for (const auto& [t, s] : spec_b) right.emplace(t.label, &s);
  for (const auto& [t, s] : spec_a) {
    auto it = right.find(t.label);
    if (it == right.end()) continue;
    const Section& sb = *it->second;
    EntEntry e;
    e.type = t;
    e.left = s;
    e.right = sb;
    e.witness_order = s.p.size() * sb.k.size();
    if (ctx) {
      GroupPtr qa = quotient_group(s.p, s.k);
      GroupPtr qb = quotient_group(sb.p, sb.k);
      auto phi = find_isomorphism(*qa, *qb);
      if (!phi) throw InternalError("sections with equal labels are not isomorphic: " + t.label);
      e.witness = fiber_subgroup(*ctx->product, s.p, s.k, sb.p, sb.k, *phi);
      if (!(base_change_type(*ctx, e.witness, &classifier) == t)) {
        throw InternalError("fiber witness re-verification failed for " + t.label);
      }
    }
    report.entries.push_back(std::move(e));
  }
  for (const auto& e : report.entries) {
    if (bound % e.type.order != 0) throw InternalError("type order does not divide d");
  }
  return report;
}

EntReport ent_set(const EntContext& ctx, Strategy strategy, const SubgroupEnumerator& enumerate) {
  const bool untangled = ctx.join.size() == ctx.order();
  if (strategy == Strategy::kGoursat && !untangled) {
    throw PreconditionError("goursat strategy needs G to be the full product of its images");
  }
  if (strategy == Strategy::kDirect || (strategy == Strategy::kAuto && !untangled)) {
    return ent_set_direct(ctx, enumerate);
  }
  GroupPtr a, b;
  if (ctx.product) {
    a = ctx.product->left;
    b = ctx.product->right;
  } else if (ctx.p && ctx.group->is_matrix_group()) {
    a = reduction_image(ctx.group, ctx.p);
    b = reduction_image(ctx.group, ctx.q);
  } else {
    const Subgroup whole = Subgroup::whole(ctx.group);
    a = quotient_group(whole, ctx.kernel_q);
    b = quotient_group(whole, ctx.kernel_p);
  }
  return ent_set_goursat(a, b, enumerate);
}

}  // namespace galent
