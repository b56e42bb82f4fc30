#pragma once

// Entanglement types of a group with two distinguished normal subgroups, and
// the computations built on them: entangling subgroups, cyclic witnesses and
// the set of all types reachable by passing to subgroups.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "galent/finite_group.hpp"
#include "galent/group_engine.hpp"
#include "galent/group_id.hpp"

namespace galent {

// G with N_p = G ∩ ker(mod p) and N_q = G ∩ ker(mod q).
struct EntContext {
  GroupPtr group;
  Subgroup kernel_p;
  Subgroup kernel_q;
  Subgroup join;  // <N_p, N_q>
  std::uint32_t p = 0;  // 0 when the context was built from abstract kernels
  std::uint32_t q = 0;
  // Set when G was assembled as the full product of a mod-p and a mod-q image.
  std::optional<ProductGroup> product;

  std::size_t order() const { return group->order(); }
  std::size_t image_p_order() const { return group->order() / kernel_p.size(); }
  std::size_t image_q_order() const { return group->order() / kernel_q.size(); }
};

// G <= GL2(Z/pq) given as a matrix group of modulus p*q.
EntContext make_context(GroupPtr g, std::uint32_t p, std::uint32_t q);
// Mod-pq generators.
EntContext make_context(std::span<const Mat2> generators, std::uint32_t p, std::uint32_t q,
                        std::size_t cap = kDefaultOrderCap);
// A <= GL2(Z/p) and B <= GL2(Z/q) with no entanglement over the base: G = A x B.
// Other factors are accepted too; p and q are then left 0.
EntContext make_product_context(GroupPtr a, GroupPtr b, std::size_t cap = kDefaultOrderCap);
// Any group with two normal subgroups meeting trivially.
EntContext make_context(Subgroup n_p, Subgroup n_q);
// A x_Q B for the first pair (N_A, N_B) of normal subgroups of index m, in
// (size, members) order, with isomorphic quotients, glued along the first
// isomorphism found. A is the mod-p side. Throws PreconditionError when no
// such pair exists.
EntContext make_fiber_context(const GroupPtr& a, const GroupPtr& b, std::size_t m,
                              std::size_t cap = kDefaultOrderCap);

std::uint64_t d_value(const EntContext& ctx);

// H / <H ∩ N_p, H ∩ N_q>.
Subgroup base_change_kernel(const EntContext& ctx, const Subgroup& h);
GroupPtr base_change_quotient(const EntContext& ctx, const Subgroup& h);
std::size_t base_change_order(const EntContext& ctx, const Subgroup& h);
IsoClass base_change_type(const EntContext& ctx, const Subgroup& h,
                          IsoClassifier* classifier = nullptr);
IsoClass entanglement_type(const EntContext& ctx, IsoClassifier* classifier = nullptr);

// |type(H)| divides d.
bool divisibility_check(const EntContext& ctx, const Subgroup& h);
// |type(H)| [G:<H,N_p>] [G:<H,N_q>] = |type(G)| [G:H].
bool lk_identity_check(const EntContext& ctx, const Subgroup& h);

// --- entangling subgroups ---------------------------------------------------

struct EntanglingSubgroup {
  Subgroup h;
  std::size_t meet_1 = 0;  // |H ∩ G1|
  std::size_t meet_2 = 0;  // |H ∩ G2|
  // H / (H ∩ G1), present when H ∩ G1 is normal in H.
  std::optional<IsoClass> type;
};

// Subgroups H of F with H ∩ G1 = H ∩ G2 strictly inside H. By default one
// per orbit under conjugation by N_F(G1) ∩ N_F(G2) (the lexicographically
// least member); `mode = kAll` lists every such subgroup.
std::vector<EntanglingSubgroup> entangling_subgroups(const Subgroup& g1, const Subgroup& g2,
                                                     Conjugacy mode = Conjugacy::kUpToConjugacy);

// Whether <H, G1∩G2> ∩ G1 = <H, G1∩G2> ∩ G2 is strictly inside <H, G1∩G2>.
// Throws PreconditionError unless H ∩ G1 = H ∩ G2 ⊊ H and one of H,
// G1 ∩ G2 is normal in F.
bool groupcomp_verify(const Subgroup& g1, const Subgroup& g2, const Subgroup& h);

// --- witnesses --------------------------------------------------------------

// H <= G with base_change_type(H) = Z/ell. Throws PreconditionError unless ell
// is a prime dividing d.
Subgroup cyclic_witness(const EntContext& ctx, std::uint32_t ell);

struct S3Witness {
  std::uint32_t q = 0;
  GroupPtr group;             // <(σ,σ'), (τ,τ')> as matrices mod 2q
  std::vector<Mat2> generators;
  bool isomorphic_to_s3 = false;
  bool meets_mod2_kernel_trivially = false;  // H ∩ (1 x GL2(q)) = 1
  bool meets_modq_kernel_trivially = false;  // H ∩ (GL2(2) x 1) = 1
  bool projects_onto_gl2_2 = false;

  bool verified() const {
    return isomorphic_to_s3 && meets_mod2_kernel_trivially && meets_modq_kernel_trivially &&
           projects_onto_gl2_2;
  }
};

// σ' = [[1,1],[0,-1]] and τ' = [[-1,0],[1,1]] mod q: both of order 2 with
// σ'τ' of order 3 for every prime q. (The upper-triangular variant
// τ' = [[-1,1],[0,1]] does not work: σ'τ' then has order 2q and the pair
// generates a dihedral group of order 2q.)
std::pair<Mat2, Mat2> s3_generators(std::uint32_t q);

// The diagonal subgroup generated by (σ, σ') and (τ, τ'), where σ, τ are the
// reductions of σ', τ' mod 2 and generate GL2(2). Throws PreconditionError
// for q = 2 or q not prime.
S3Witness s3_witness(std::uint32_t q);

// --- Ent sets ---------------------------------------------------------------

// Conjugacy-class representatives of the subgroups of a group. Injected so
// callers can put a persistent cache in front of enumerate_subgroups.
using SubgroupEnumerator = std::function<std::vector<Subgroup>(const GroupPtr&)>;
SubgroupEnumerator default_enumerator(EnumerationOptions options = {});

// Sections P/K (K normal in P <= A) realizing one isomorphism type.
struct Section {
  Subgroup p;
  Subgroup k;
};

struct EntEntry {
  IsoClass type;
  // Witness in the context group (direct) or in A x B (Goursat, when the
  // product is within the materialization cap). Empty parent otherwise.
  Subgroup witness;
  std::size_t witness_order = 0;
  std::optional<Section> left;  // Goursat only
  std::optional<Section> right;
};

struct EntReport {
  std::string strategy;  // "direct" or "goursat"
  std::size_t group_order = 0;
  std::size_t image_p_order = 0;
  std::size_t image_q_order = 0;
  std::uint64_t d = 0;
  IsoClass type;  // type of G itself
  std::size_t classes_scanned = 0;
  std::vector<EntEntry> entries;  // sorted by (order, label)

  std::vector<std::string> labels() const;
  bool contains(const std::string& label) const;
};

// {type(H) : H <= G}, scanning one subgroup per conjugacy class. Every
// witness is re-verified.
EntReport ent_set_direct(const EntContext& ctx, const SubgroupEnumerator& enumerate = {});

// Ent set of the full product A x B from the section spectra of A and B.
// Witnesses are built as fiber subgroups when |A||B| <= materialize_cap.
EntReport ent_set_goursat(const GroupPtr& a, const GroupPtr& b,
                          const SubgroupEnumerator& enumerate = {},
                          std::size_t materialize_cap = kDefaultOrderCap);

// Every isomorphism type of a section P/K of `g` whose order divides
// `order_bound` (0: no bound), each with the section of least |K| (then
// least P, then least K).
std::vector<std::pair<IsoClass, Section>> section_spectrum(const GroupPtr& g,
                                                           std::uint64_t order_bound,
                                                           IsoClassifier& classifier,
                                                           const SubgroupEnumerator& enumerate = {});

// Direct when G is not a full product of its images; Goursat otherwise.
enum class Strategy { kAuto, kDirect, kGoursat };
EntReport ent_set(const EntContext& ctx, Strategy strategy = Strategy::kAuto,
                  const SubgroupEnumerator& enumerate = {});

// --- the p = 2 case table ---------------------------------------------------

struct Classification2q {
  std::uint32_t q = 0;
  std::size_t image_2_order = 0;
  bool image_q_is_gl2 = false;
  bool untangled = false;  // type(G) trivial
  bool hypotheses_hold = false;  // image_q = GL2(q) and type(G) trivial
  std::vector<std::string> predicted;
  std::optional<std::vector<std::string>> computed;
  bool matches = false;       // computed == predicted (if hypotheses hold)
  bool within_bound = false;  // computed ⊆ {1, Z/2, Z/3, S3}
  bool z6_absent = false;
};

// Throws PreconditionError unless the context has p = 2 and odd prime q.
Classification2q classify_2q(const EntContext& ctx, bool compute = true,
                             const SubgroupEnumerator& enumerate = {});

// gcd(|GL2(p)|, |GL2(q)|).
std::uint64_t gl2_order_gcd(std::uint64_t p, std::uint64_t q);

}  // namespace galent
