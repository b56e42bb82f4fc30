#include "galent/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "galent/error.hpp"

namespace galent {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

GroupPtr cyclic_mod2(std::uint32_t order) {
  std::vector<Mat2> gens;
  if (order == 3) gens.emplace_back(1, 1, 1, 0, 2);
  if (order == 2) gens.emplace_back(1, 1, 0, 1, 2);
  return generate_group(gens, 2);
}

GroupPtr s3_mod5() {
  const auto [sigma, tau] = s3_generators(5);
  const Mat2 gens[] = {sigma, tau};
  return generate_group(gens, 5);
}

GroupPtr borel_mod7() {
  const Mat2 gens[] = {Mat2(2, 0, 0, 1, 7), Mat2(1, 1, 0, 1, 7)};
  return generate_group(gens, 7);
}

std::string join_labels(const std::vector<std::string>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
  return out + "}";
}

struct Runner {
  const AcceptanceOptions& options;
  const std::function<void(const CriterionResult&)>& on_result;
  std::vector<CriterionResult> results;

  template <class Body>
  void run(std::string id, std::string name, double budget, Body body) {
    CriterionResult r;
    r.id = std::move(id);
    r.name = std::move(name);
    r.budget_seconds = budget;
    const auto t0 = Clock::now();
    try {
      std::ostringstream detail;
      r.passed = body(detail);
      r.detail = detail.str();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = since(t0);
    if (budget > 0 && r.seconds > budget) {
      r.passed = false;
      r.detail += " [over budget]";
    }
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }

  SubgroupEnumerator enumerator() const {
    return options.enumerate ? options.enumerate : default_enumerator();
  }
};

bool criterion_entangling(std::ostream& os) {
  const EntContext ctx = s3_fiber_s3_context();
  // G_i fixes the i-th S3 field: the kernel of projection to factor i.
  const auto found = entangling_subgroups(ctx.kernel_p, ctx.kernel_q);
  std::multiset<std::string> types;
  bool trivial_meets = true;
  for (const auto& e : found) {
    types.insert(e.type ? e.type->label : "?");
    trivial_meets = trivial_meets && e.meet_1 == 1 && e.meet_2 == 1;
  }
  const std::multiset<std::string> expected = {"Z/2", "Z/3", "Z/3", "S3", "S3"};
  os << "|F| = " << ctx.order() << ", " << found.size() << " subgroups, types "
     << join_labels({types.begin(), types.end()});
  return ctx.order() == 18 && found.size() == 5 && types == expected && trivial_meets;
}

}  // namespace

EntContext s3_fiber_s3_context() {
  return make_fiber_context(general_linear_group(2), s3_mod5(), 2);
}

std::vector<NamedContext> fixture_contexts() {
  std::vector<NamedContext> out;
  out.push_back({"GL2(2) x GL2(3)", make_product_context(general_linear_group(2), general_linear_group(3))});
  out.push_back({"GL2(2) x_Z/2 GL2(3)", make_fiber_context(general_linear_group(2), general_linear_group(3), 2)});
  out.push_back({"S3 x_Z/2 S3 (mod 10)", s3_fiber_s3_context()});
  out.push_back({"Z/3 x_Z/3 B(7)", make_fiber_context(cyclic_mod2(3), borel_mod7(), 3)});
  out.push_back({"Z/3 x GL2(3)", make_product_context(cyclic_mod2(3), general_linear_group(3))});
  out.push_back({"Z/2 x GL2(3)", make_product_context(cyclic_mod2(2), general_linear_group(3))});
  out.push_back({"1 x GL2(3)", make_product_context(cyclic_mod2(1), general_linear_group(3))});
  out.push_back({"GL2(2) x GL2(5)", make_product_context(general_linear_group(2), general_linear_group(5))});
  out.push_back({"GL2(3) x_Z/2 GL2(5)", make_fiber_context(general_linear_group(3), general_linear_group(5), 2)});
  return out;
}

std::vector<std::pair<std::string, GroupPtr>> small_test_groups() {
  std::vector<std::pair<std::string, GroupPtr>> out = {
      {"Z/2", cyclic_group(2)},
      {"Z/3", cyclic_group(3)},
      {"Z/4", cyclic_group(4)},
      {"Z/2xZ/2", direct_product(cyclic_group(2), cyclic_group(2)).group},
      {"Z/6", cyclic_group(6)},
      {"Z/8", cyclic_group(8)},
  };
  for (const auto& e : catalog()) out.emplace_back(e.name, e.model);
  return out;
}

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options, const std::function<void(const CriterionResult&)>& on_result) {
  Runner runner{options, on_result, {}};
  const SubgroupEnumerator enumerate = runner.enumerator();

  runner.run("1", "entangling subgroups of S3 x_Z/2 S3", 1.0,
             [&](std::ostream& os) { return criterion_entangling(os); });

  runner.run("2", "Ent set of GL2(2) x GL2(q), q = 3 direct and q = 3, 5, 7 Goursat", 0,
             [&](std::ostream& os) {
               const std::vector<std::string> expected = {"1", "Z/2", "Z/3", "S3"};
               bool ok = true;
               auto t0 = Clock::now();
               const EntReport direct = ent_set_direct(
                   make_product_context(general_linear_group(2), general_linear_group(3)), enumerate);
               double dt = since(t0);
               ok = ok && direct.labels() == expected && !direct.contains("Z/6") && dt < 1.0;
               os << "direct " << join_labels(direct.labels()) << " " << std::fixed
                  << std::setprecision(2) << dt << "s (<1s)";
               for (std::uint32_t q : {3u, 5u, 7u}) {
                 t0 = Clock::now();
                 const EntReport g =
                     ent_set_goursat(general_linear_group(2), general_linear_group(q), enumerate);
                 dt = since(t0);
                 const double budget = q == 7 ? 120.0 : 1e9;
                 ok = ok && g.labels() == expected && !g.contains("Z/6") && dt < budget;
                 os << "; q=" << q << " " << join_labels(g.labels()) << " " << dt << "s";
                 if (q == 7) os << " (<120s)";
               }
               return ok;
             });

  runner.run("3", "degenerate mod-2 images Z/3, Z/2, 1 against GL2(3)", 10.0,
             [&](std::ostream& os) {
               const std::vector<std::vector<std::string>> expected = {
                   {"1", "Z/3"}, {"1", "Z/2"}, {"1"}};
               const std::uint32_t orders[] = {3, 2, 1};
               bool ok = true;
               for (int i = 0; i < 3; ++i) {
                 const EntContext ctx =
                     make_product_context(cyclic_mod2(orders[i]), general_linear_group(3));
                 const EntReport r = ent_set_direct(ctx, enumerate);
                 const Classification2q c = classify_2q(ctx, true, enumerate);
                 ok = ok && r.labels() == expected[i] && !r.contains("Z/6") && c.matches &&
                      c.predicted == expected[i] && c.z6_absent;
                 os << (i ? "; " : "") << "|im_2|=" << orders[i] << " " << join_labels(r.labels());
               }
               return ok;
             });

  runner.run("4", "Goursat Ent set of GL2(3) x GL2(5) contains the ten listed types", 600.0,
             [&](std::ostream& os) {
               const EntReport r =
                   ent_set_goursat(general_linear_group(3), general_linear_group(5), enumerate);
               const char* listed[] = {"1",   "Z/2", "Z/3", "Z/4", "Z/2xZ/2",
                                       "Z/6", "Z/8", "S3",  "D4",  "Q8"};
               bool ok = true;
               for (const char* t : listed) {
                 if (!r.contains(t)) {
                   ok = false;
                   os << "missing " << t << "; ";
                 }
               }
               os << r.entries.size() << " types: " << join_labels(r.labels());
               return ok;
             });

  if (options.stretch) {
    struct Stretch {
      std::uint32_t q;
      std::vector<std::string> listed;
    };
    const std::vector<std::string> ten = {"1",   "Z/2", "Z/3", "Z/4", "Z/2xZ/2",
                                          "Z/6", "Z/8", "S3",  "D4",  "Q8"};
    std::vector<std::string> fourteen = ten;
    for (const char* t : {"D6", "SD16", "SL2(3)", "GL2(3)"}) fourteen.emplace_back(t);
    EnumerationOptions big;
    big.cap_classes = 100000;
    const SubgroupEnumerator stretch_enum =
        options.enumerate ? options.enumerate : default_enumerator(big);
    for (const Stretch& s : {Stretch{7, ten}, Stretch{13, ten}, Stretch{11, fourteen},
                             Stretch{17, fourteen}}) {
      runner.run("4s-" + std::to_string(s.q),
                 "stretch: Goursat Ent set of GL2(3) x GL2(" + std::to_string(s.q) + ")", 0,
                 [&](std::ostream& os) {
                   const EntReport r = ent_set_goursat(
                       general_linear_group(3), general_linear_group(s.q, 200000), stretch_enum, 0);
                   bool ok = true;
                   for (const auto& t : s.listed) {
                     if (!r.contains(t)) {
                       ok = false;
                       os << "missing " << t << "; ";
                     }
                   }
                   os << join_labels(r.labels());
                   return ok;
                 });
    }
  }

  const std::vector<NamedContext> fixtures = fixture_contexts();

  runner.run("5", "cyclic witnesses for every prime dividing d", 30.0, [&](std::ostream& os) {
    std::size_t attempts = 0, successes = 0;
    bool branch_top = false, branch_kernel = false;
    for (const auto& [name, ctx] : fixtures) {
      const std::uint64_t d = d_value(ctx);
      const std::size_t top = ctx.order() / ctx.join.size();
      for (std::uint32_t ell = 2; ell <= d; ++ell) {
        if (d % ell || !is_prime(ell)) continue;
        ++attempts;
        (top % ell == 0 ? branch_top : branch_kernel) = true;
        try {
          const Subgroup h = cyclic_witness(ctx, ell);
          if (base_change_type(ctx, h).label == "Z/" + std::to_string(ell)) ++successes;
          else os << "wrong type in " << name << " ell=" << ell << "; ";
        } catch (const std::exception& e) {
          os << name << " ell=" << ell << ": " << e.what() << "; ";
        }
      }
    }
    os << successes << "/" << attempts << " over " << fixtures.size() << " contexts";
    return attempts > 0 && successes == attempts && branch_top && branch_kernel &&
           fixtures.size() >= 6;
  });

  runner.run("6", "divisibility, degree identity, conjugation, groupcomp, Goursat oracle", 300.0,
             [&](std::ostream& os) {
               std::mt19937_64 rng(options.seed);
               auto pick = [&](std::size_t n) {
                 return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
               };
               std::size_t failures = 0;

               // Exhaustive identities on every fixture with |G| <= 300.
               std::vector<std::pair<const EntContext*, std::vector<Subgroup>>> small;
               std::size_t scanned = 0;
               for (const auto& f : fixtures) {
                 if (f.context.order() > 300) continue;
                 auto all = enumerate_subgroups(f.context.group, Conjugacy::kAll);
                 for (const Subgroup& h : all) {
                   ++scanned;
                   if (!divisibility_check(f.context, h) || !lk_identity_check(f.context, h)) {
                     ++failures;
                     os << "identity failure in " << f.name << "; ";
                   }
                 }
                 small.emplace_back(&f.context, std::move(all));
               }
               os << scanned << " subgroups over " << small.size() << " contexts";

               // Conjugation invariance.
               const std::size_t kInstances = 1000;
               for (std::size_t i = 0; i < kInstances; ++i) {
                 const auto& [ctx, subs] = small[pick(small.size())];
                 const Subgroup& h = subs[pick(subs.size())];
                 const Elem g = static_cast<Elem>(pick(ctx->order()));
                 if (!(base_change_type(*ctx, h) == base_change_type(*ctx, conjugate(h, g)))) {
                   ++failures;
                   os << "; conjugation changed a type";
                 }
               }
               os << "; " << kInstances << " conjugation instances";

               // groupcomp on random hypotheses-satisfying instances.
               std::vector<std::pair<GroupPtr, std::vector<Subgroup>>> groups;
               for (const auto& e : catalog())
                 if (e.model->order() <= 48)
                   groups.emplace_back(e.model, enumerate_subgroups(e.model, Conjugacy::kAll));
               std::size_t instances = 0, tries = 0;
               while (instances < kInstances && tries < 200 * kInstances) {
                 ++tries;
                 const auto& [f, subs] = groups[pick(groups.size())];
                 const Subgroup& g1 = subs[pick(subs.size())];
                 const Subgroup& g2 = subs[pick(subs.size())];
                 const Subgroup whole = Subgroup::whole(f);
                 const bool common_normal = is_normal_in(intersection(g1, g2), whole);
                 std::vector<const Subgroup*> hs;
                 for (const Subgroup& h : subs) {
                   const Subgroup m1 = intersection(h, g1);
                   if (m1.size() == h.size() || !(m1 == intersection(h, g2))) continue;
                   if (common_normal || is_normal_in(h, whole)) hs.push_back(&h);
                 }
                 if (hs.empty()) continue;
                 ++instances;
                 if (!groupcomp_verify(g1, g2, *hs[pick(hs.size())])) {
                   ++failures;
                   os << "; groupcomp failed";
                 }
               }
               os << "; " << instances << " groupcomp instances";
               if (instances < kInstances) ++failures;

               // Goursat against the direct scan on small products.
               const auto groups_small = small_test_groups();
               std::size_t pairs = 0;
               for (std::size_t i = 0; i < groups_small.size(); ++i)
                 for (std::size_t j = i; j < groups_small.size(); ++j) {
                   const GroupPtr& a = groups_small[i].second;
                   const GroupPtr& b = groups_small[j].second;
                   if (a->order() * b->order() > 400) continue;
                   ++pairs;
                   const auto direct = ent_set_direct(make_product_context(a, b), enumerate);
                   const auto goursat = ent_set_goursat(a, b, enumerate);
                   if (direct.labels() != goursat.labels()) {
                     ++failures;
                     os << "; oracle mismatch on " << groups_small[i].first << " x "
                        << groups_small[j].first;
                   }
                 }
               os << "; " << pairs << " Goursat pairs; " << failures << " failures";
               return failures == 0;
             });

  runner.run("7", "subgroup counts and the S3 witness for q = 3, 5, 7, 11", 60.0,
             [&](std::ostream& os) {
               const GroupPtr gl23 = general_linear_group(3);
               const Subgroup whole = Subgroup::whole(gl23);
               const GroupPtr s4 = quotient_group(whole, center(whole));
               const std::vector<std::tuple<std::string, GroupPtr, std::size_t>> cases = {
                   {"S3", catalog_model("S3"), 6}, {"Z/12", cyclic_group(12), 6},
                   {"Q8", catalog_model("Q8"), 6}, {"D4", catalog_model("D4"), 10},
                   {"S4", s4, 30}};
               bool ok = true;
               for (const auto& [name, g, expected] : cases) {
                 const std::size_t n = enumerate_subgroups(g, Conjugacy::kAll).size();
                 ok = ok && n == expected;
                 os << name << ":" << n << " ";
               }
               for (std::uint32_t q : {3u, 5u, 7u, 11u}) {
                 const bool v = s3_witness(q).verified();
                 ok = ok && v;
                 os << "q=" << q << (v ? " ok " : " FAILED ");
               }
               return ok;
             });

  runner.run("8", "gcd of GL2 orders over prime pairs below 50", 1.0, [&](std::ostream& os) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n < 50; ++n)
      if (is_prime(n)) primes.push_back(n);
    std::size_t pairs = 0, bad = 0;
    for (std::size_t i = 0; i < primes.size(); ++i)
      for (std::size_t j = i + 1; j < primes.size(); ++j) {
        const std::uint64_t p = primes[i], q = primes[j];
        const std::uint64_t g = gl2_order_gcd(p, q);
        ++pairs;
        if (g % 6 != 0) ++bad;
        if ((q % p == 1 || q % p == p - 1) && g % p != 0) ++bad;
      }
    os << pairs << " pairs, " << bad << " violations";
    return bad == 0;
  });

  return std::move(runner.results);
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(6) << r.id << r.name << "  "
     << std::fixed << std::setprecision(2) << r.seconds << "s";
  if (r.budget_seconds > 0) os << " (budget " << r.budget_seconds << "s)";
  if (!r.detail.empty()) os << "  " << r.detail;
  return os.str();
}

}  // namespace galent
