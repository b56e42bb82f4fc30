#include "galent/finite_group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "galent/error.hpp"

namespace galent {
namespace {

constexpr std::uint64_t kDenseIndexLimit = 1u << 22;

// Generic inverse search through a multiplication functor; O(n^2).
template <class Mul>
std::vector<Elem> inverses_by_search(std::size_t n, Elem id, Mul&& mul) {
  std::vector<Elem> inv(n, static_cast<Elem>(n));
  for (Elem a = 0; a < n; ++a) {
    if (inv[a] != n) continue;
    for (Elem b = 0; b < n; ++b) {
      if (mul(a, b) == id) {
        inv[a] = b;
        inv[b] = a;
        break;
      }
    }
    if (inv[a] == n) throw PreconditionError("group table: element has no inverse");
  }
  return inv;
}

}  // namespace

GroupPtr FiniteGroup::from_matrices(std::vector<Mat2> elements) {
  if (elements.empty()) throw PreconditionError("from_matrices: empty element list");
  const std::uint32_t modulus = elements.front().modulus();
  for (const auto& m : elements) {
    if (m.modulus() != modulus) throw PreconditionError("from_matrices: mixed moduli");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->rep_ = Representation::kMatrix;
  g->n_ = elements.size();
  g->modulus_ = modulus;
  g->mats_ = std::move(elements);
  const std::uint64_t n4 = std::uint64_t{modulus} * modulus * modulus * modulus;
  if (n4 <= kDenseIndexLimit) {
    g->dense_index_.assign(n4, -1);
    for (Elem i = 0; i < g->n_; ++i) g->dense_index_[g->mats_[i].code()] = static_cast<std::int32_t>(i);
  } else {
    g->sparse_index_.reserve(g->n_);
    for (Elem i = 0; i < g->n_; ++i) g->sparse_index_.emplace(g->mats_[i].code(), i);
  }
  g->keys_.reserve(g->n_);
  for (const auto& m : g->mats_) {
    const auto& e = m.entries();
    g->keys_.push_back({static_cast<std::int32_t>(e[0]), static_cast<std::int32_t>(e[1]),
                        static_cast<std::int32_t>(e[2]), static_cast<std::int32_t>(e[3])});
  }
  auto id = g->find(Mat2::identity(modulus));
  if (!id) throw PreconditionError("from_matrices: identity missing");
  g->identity_ = *id;
  g->inverse_.resize(g->n_);
  for (Elem i = 0; i < g->n_; ++i) {
    auto j = g->find(g->mats_[i].inverse());
    if (!j) throw PreconditionError("from_matrices: element set not closed under inverse");
    g->inverse_[i] = *j;
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::full_product(GroupPtr left, GroupPtr right) {
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->rep_ = Representation::kPair;
  g->n_ = left->order() * right->order();
  g->comps_.reserve(g->n_);
  for (Elem l = 0; l < left->order(); ++l) {
    for (Elem r = 0; r < right->order(); ++r) g->comps_.emplace_back(l, r);
  }
  g->full_product_ = true;
  g->left_ = std::move(left);
  g->right_ = std::move(right);
  g->keys_.reserve(g->n_);
  for (auto [l, r] : g->comps_) {
    ElementKey k = g->left_->key(l);
    const auto& kr = g->right_->key(r);
    k.insert(k.end(), kr.begin(), kr.end());
    g->keys_.push_back(std::move(k));
  }
  g->identity_ = *g->find_pair(g->left_->identity(), g->right_->identity());
  g->inverse_.resize(g->n_);
  for (Elem i = 0; i < g->n_; ++i) {
    auto [l, r] = g->comps_[i];
    g->inverse_[i] = *g->find_pair(g->left_->inv(l), g->right_->inv(r));
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_pairs(GroupPtr left, GroupPtr right,
                                 std::vector<std::pair<Elem, Elem>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  if (pairs.size() == left->order() * right->order()) {
    return full_product(std::move(left), std::move(right));
  }
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->rep_ = Representation::kPair;
  g->n_ = pairs.size();
  g->comps_ = std::move(pairs);
  g->left_ = std::move(left);
  g->right_ = std::move(right);
  const std::uint64_t rn = g->right_->order();
  g->sparse_index_.reserve(g->n_);
  for (Elem i = 0; i < g->n_; ++i) {
    g->sparse_index_.emplace(g->comps_[i].first * rn + g->comps_[i].second, i);
  }
  g->keys_.reserve(g->n_);
  for (auto [l, r] : g->comps_) {
    ElementKey k = g->left_->key(l);
    const auto& kr = g->right_->key(r);
    k.insert(k.end(), kr.begin(), kr.end());
    g->keys_.push_back(std::move(k));
  }
  auto id = g->find_pair(g->left_->identity(), g->right_->identity());
  if (!id) throw PreconditionError("from_pairs: identity missing");
  g->identity_ = *id;
  g->inverse_.resize(g->n_);
  for (Elem i = 0; i < g->n_; ++i) {
    auto [l, r] = g->comps_[i];
    auto j = g->find_pair(g->left_->inv(l), g->right_->inv(r));
    if (!j) throw PreconditionError("from_pairs: pair set not closed under inverse");
    g->inverse_[i] = *j;
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_cosets(GroupPtr parent, std::vector<Elem> coset_reps,
                                  std::vector<Elem> coset_of) {
  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->rep_ = Representation::kCoset;
  g->n_ = coset_reps.size();
  g->parent_ = std::move(parent);
  g->coset_reps_ = std::move(coset_reps);
  g->coset_of_ = std::move(coset_of);
  g->keys_.reserve(g->n_);
  for (Elem r : g->coset_reps_) g->keys_.push_back(g->parent_->key(r));
  g->identity_ = g->coset_of_[g->parent_->identity()];
  g->inverse_.resize(g->n_);
  for (Elem i = 0; i < g->n_; ++i) {
    g->inverse_[i] = g->coset_of_[g->parent_->inv(g->coset_reps_[i])];
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_table(std::vector<Elem> table, std::vector<ElementKey> keys) {
  const std::size_t n = keys.size();
  if (n == 0 || table.size() != n * n) {
    throw PreconditionError("from_table: table size does not match key count");
  }
  for (const auto& k : keys) {
    if (k.size() != keys.front().size()) throw PreconditionError("from_table: ragged keys");
  }
  for (Elem v : table) {
    if (v >= n) throw PreconditionError("from_table: entry out of range");
  }
  // Re-index so that keys are sorted.
  std::vector<Elem> perm(n);  // new index -> old index
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](Elem x, Elem y) { return keys[x] < keys[y]; });
  for (std::size_t i = 1; i < n; ++i) {
    if (keys[perm[i - 1]] == keys[perm[i]]) throw PreconditionError("from_table: duplicate key");
  }
  std::vector<Elem> old_to_new(n);
  for (Elem i = 0; i < n; ++i) old_to_new[perm[i]] = i;

  std::shared_ptr<FiniteGroup> g(new FiniteGroup());
  g->rep_ = Representation::kAbstract;
  g->n_ = n;
  g->abstract_table_.resize(n * n);
  g->keys_.resize(n);
  for (Elem i = 0; i < n; ++i) {
    g->keys_[i] = std::move(keys[perm[i]]);
    for (Elem j = 0; j < n; ++j) {
      g->abstract_table_[std::size_t{i} * n + j] = old_to_new[table[std::size_t{perm[i]} * n + perm[j]]];
    }
  }
  const auto& t = g->abstract_table_;
  auto mul = [&](Elem a, Elem b) { return t[std::size_t{a} * n + b]; };
  std::optional<Elem> id;
  for (Elem e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) id = e;
  }
  if (!id) throw PreconditionError("from_table: no identity element");
  g->identity_ = *id;
  if (n <= 128) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw PreconditionError("from_table: multiplication is not associative");
  }
  g->inverse_ = inverses_by_search(n, *id, mul);
  g->finish();
  return g;
}

void FiniteGroup::finish() {
  if (n_ <= kCayleyTableThreshold) {
    std::vector<std::uint16_t> table(n_ * n_);
    for (Elem a = 0; a < n_; ++a) {
      for (Elem b = 0; b < n_; ++b) table[std::size_t{a} * n_ + b] = static_cast<std::uint16_t>(mul_slow(a, b));
    }
    table_ = std::move(table);
    abstract_table_.clear();
    abstract_table_.shrink_to_fit();
  }
  orders_.assign(n_, 0);
  for (Elem a = 0; a < n_; ++a) {
    if (orders_[a] != 0) continue;
    std::uint32_t k = 1;
    Elem x = a;
    while (x != identity_) {
      x = mul(x, a);
      ++k;
      if (k > n_) throw PreconditionError("element of unbounded order: set is not a group");
    }
    orders_[a] = k;
    // Powers a^j with gcd(j, k) = 1 share the order.
    Elem y = a;
    for (std::uint32_t j = 1; j < k; ++j, y = mul(y, a)) {
      if (std::gcd(j, k) == 1) orders_[y] = k;
    }
  }
}

Elem FiniteGroup::mul_slow(Elem a, Elem b) const {
  switch (rep_) {
    case Representation::kMatrix: {
      auto idx = find(mats_[a] * mats_[b]);
      if (!idx) throw PreconditionError("matrix group is not closed under multiplication");
      return *idx;
    }
    case Representation::kPair: {
      auto [la, ra] = comps_[a];
      auto [lb, rb] = comps_[b];
      auto idx = find_pair(left_->mul(la, lb), right_->mul(ra, rb));
      if (!idx) throw PreconditionError("pair group is not closed under multiplication");
      return *idx;
    }
    case Representation::kCoset:
      return coset_of_[parent_->mul(coset_reps_[a], coset_reps_[b])];
    case Representation::kAbstract:
      return abstract_table_[std::size_t{a} * n_ + b];
  }
  throw InternalError("unknown representation");
}

Elem FiniteGroup::pow(Elem a, std::uint64_t k) const {
  Elem result = identity_;
  Elem base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    base = mul(base, base);
    k >>= 1;
  }
  return result;
}

std::optional<Elem> FiniteGroup::find(const ElementKey& key) const {
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key) return std::nullopt;
  return static_cast<Elem>(it - keys_.begin());
}

std::optional<Elem> FiniteGroup::find(const Mat2& m) const {
  if (rep_ != Representation::kMatrix || m.modulus() != modulus_) return std::nullopt;
  const std::uint64_t code = m.code();
  if (!dense_index_.empty()) {
    if (code >= dense_index_.size() || dense_index_[code] < 0) return std::nullopt;
    return static_cast<Elem>(dense_index_[code]);
  }
  auto it = sparse_index_.find(code);
  if (it == sparse_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<Elem> FiniteGroup::find_pair(Elem l, Elem r) const {
  if (rep_ != Representation::kPair) return std::nullopt;
  const std::uint64_t code = std::uint64_t{l} * right_->order() + r;
  if (full_product_) return static_cast<Elem>(code);
  auto it = sparse_index_.find(code);
  if (it == sparse_index_.end()) return std::nullopt;
  return it->second;
}

std::string FiniteGroup::element_label(Elem a) const {
  switch (rep_) {
    case Representation::kMatrix:
      return mats_[a].to_string();
    case Representation::kPair:
      return "(" + left_->element_label(comps_[a].first) + "," +
             right_->element_label(comps_[a].second) + ")";
    case Representation::kCoset:
      return parent_->element_label(coset_reps_[a]) + "N";
    case Representation::kAbstract:
      break;
  }
  std::ostringstream os;
  os << '<';
  for (std::size_t i = 0; i < keys_[a].size(); ++i) os << (i ? "," : "") << keys_[a][i];
  os << '>';
  return os.str();
}

// --- Subgroup ---------------------------------------------------------------

Subgroup Subgroup::trusted(GroupPtr parent, std::vector<Elem> members,
                           std::vector<Elem> generators) {
  Subgroup s;
  s.parent_ = std::move(parent);
  s.members_ = std::move(members);
  s.gens_ = std::move(generators);
  return s;
}

Subgroup Subgroup::checked(GroupPtr parent, std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  const std::size_t n = parent->order();
  if (members.empty() || members.back() >= n) {
    throw PreconditionError("subgroup: member index out of range");
  }
  std::vector<char> in(n, 0);
  for (Elem m : members) in[m] = 1;
  if (!in[parent->identity()]) throw PreconditionError("subgroup: identity missing");
  for (Elem a : members) {
    if (!in[parent->inv(a)]) throw PreconditionError("subgroup: not closed under inverse");
    for (Elem b : members) {
      if (!in[parent->mul(a, b)]) throw PreconditionError("subgroup: not closed under multiplication");
    }
  }
  if (n % members.size() != 0) throw InternalError("subgroup: Lagrange check failed");
  return trusted(std::move(parent), std::move(members));
}

Subgroup Subgroup::whole(GroupPtr parent) {
  std::vector<Elem> all(parent->order());
  std::iota(all.begin(), all.end(), 0);
  return trusted(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
  Elem id = parent->identity();
  return trusted(std::move(parent), {id});
}

bool Subgroup::contains(Elem e) const {
  return std::binary_search(members_.begin(), members_.end(), e);
}

std::vector<char> Subgroup::mask() const {
  std::vector<char> in(parent_->order(), 0);
  for (Elem m : members_) in[m] = 1;
  return in;
}

std::size_t MemberHash::operator()(const std::vector<Elem>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem e : v) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

}  // namespace galent
