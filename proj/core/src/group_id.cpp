#include "galent/group_id.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "galent/error.hpp"
#include "galent/group_engine.hpp"

namespace galent {
namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_power_of(std::uint64_t x, std::uint64_t p) {
  while (x % p == 0) x /= p;
  return x == 1;
}

// Nilpotent iff every Sylow subgroup is normal, i.e. for each p the elements
// of p-power order number exactly the p-part of |G|.
bool nilpotent(const FiniteGroup& g) {
  const std::uint64_t n = g.order();
  for (std::uint64_t p : prime_divisors(n)) {
    std::uint64_t part = 1;
    for (std::uint64_t m = n; m % p == 0; m /= p) part *= p;
    std::uint64_t count = 0;
    for (std::uint32_t o : g.element_orders())
      if (is_power_of(o, p)) ++count;
    if (count != part) return false;
  }
  return true;
}

std::string join_numbers(const std::vector<std::uint64_t>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "fp:o" << order << "-e";
  for (std::size_t i = 0; i < order_counts.size(); ++i) {
    if (i) os << '.';
    os << order_counts[i].first << '^' << order_counts[i].second;
  }
  os << "-z" << center << "-d" << derived << "-ab" << join_numbers(abelianization, '.');
  os << (nilpotent ? "-nil" : "-nonnil") << (solvable ? "-sol" : "-insol");
  return os.str();
}

Fingerprint fingerprint(const FiniteGroup& g) {
  Fingerprint fp;
  fp.order = g.order();
  std::map<std::uint32_t, std::size_t> counts;
  for (std::uint32_t o : g.element_orders()) ++counts[o];
  fp.order_counts.assign(counts.begin(), counts.end());

  const Subgroup whole = Subgroup::whole(g.ptr());
  fp.center = center(whole).size();
  Subgroup d = derived_subgroup(whole);
  fp.derived = d.size();
  fp.abelianization = abelianization_invariants(whole, d);
  fp.nilpotent = nilpotent(g);
  for (;;) {
    if (d.size() == 1) {
      fp.solvable = true;
      break;
    }
    Subgroup next = derived_subgroup(d);
    if (next.size() == d.size()) break;
    d = std::move(next);
  }
  return fp;
}

std::string abelian_label(const std::vector<std::uint64_t>& invariants) {
  std::string out;
  for (std::uint64_t d : invariants) {
    if (d == 1) continue;
    if (!out.empty()) out += 'x';
    out += "Z/" + std::to_string(d);
  }
  return out.empty() ? "1" : out;
}

namespace {

// PSL2(3) = A4 and PGL2(3) = S4.
GroupPtr modulo_center(const GroupPtr& g) {
  const auto w = Subgroup::whole(g);
  return quotient_group(w, center(w));
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"S3", metacyclic_group(3, 0, 2)},
      {"D4", metacyclic_group(4, 0, 3)},
      {"Q8", metacyclic_group(4, 2, 3)},
      {"D6", metacyclic_group(6, 0, 5)},
      {"SD16", metacyclic_group(8, 0, 3)},
      {"A4", modulo_center(special_linear_group(3))},
      {"SL2(3)", special_linear_group(3)},
      {"S4", modulo_center(general_linear_group(3))},
      {"GL2(3)", general_linear_group(3)},
  };
  return entries;
}

GroupPtr catalog_model(std::string_view name) {
  for (const auto& e : catalog())
    if (e.name == name) return e.model;
  throw PreconditionError("unknown catalog group: " + std::string(name));
}

bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
  if (g.order() != h.order()) return false;
  if (g.order() > kIdentifyCap)
    throw CapExceeded("isomorphism test above order cap", g.order());
  if (!(fingerprint(g) == fingerprint(h))) return false;
  return find_isomorphism(g, h, kIdentifyCap).has_value();
}

namespace {

// Abelian or catalog label, or nullopt.
std::optional<IsoClass> named(const FiniteGroup& g, const Fingerprint& fp) {
  const std::size_t n = g.order();
  if (n == 1) return IsoClass{"1", 1, true};
  if (fp.derived == 1) return IsoClass{abelian_label(fp.abelianization), n, true};
  if (n > kIdentifyCap) return std::nullopt;
  static const std::vector<Fingerprint> catalog_fps = [] {
    std::vector<Fingerprint> fps;
    for (const auto& e : catalog()) fps.push_back(fingerprint(*e.model));
    return fps;
  }();
  for (std::size_t i = 0; i < catalog().size(); ++i) {
    const auto& e = catalog()[i];
    if (!(catalog_fps[i] == fp)) continue;
    if (find_isomorphism(g, *e.model, kIdentifyCap)) return IsoClass{e.name, n, true};
  }
  return std::nullopt;
}

}  // namespace

IsoClass identify(const FiniteGroup& g) {
  const Fingerprint fp = fingerprint(g);
  if (auto c = named(g, fp)) return *c;
  return IsoClass{fp.to_string(), g.order(), g.order() <= kIdentifyCap};
}

IsoClass IsoClassifier::identify(const FiniteGroup& g) {
  const Fingerprint fp = fingerprint(g);
  if (auto c = named(g, fp)) return *c;
  const std::string base = fp.to_string();
  if (g.order() > kIdentifyCap) return IsoClass{base, g.order(), false};
  auto& models = models_[base];
  std::size_t serial = 0;
  for (; serial < models.size(); ++serial)
    if (find_isomorphism(g, *models[serial], kIdentifyCap)) break;
  if (serial == models.size()) models.push_back(g.ptr());
  std::string label = serial == 0 ? base : base + "#" + std::to_string(serial + 1);
  return IsoClass{std::move(label), g.order(), true};
}

}  // namespace galent
