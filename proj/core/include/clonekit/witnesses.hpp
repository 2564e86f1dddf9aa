#ifndef CLONEKIT_WITNESSES_HPP
#define CLONEKIT_WITNESSES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/relation.hpp"

namespace clonekit {

// t(x,y,z) = z if x = y, else x.
OpTable discriminator(int k);

// The 2/3-minority operation of a chain: m(x,y,z) = z if x~y~z or x~y!~z,
// x otherwise, where ~ compares least chain levels. For the empty chain this
// is the ternary discriminator.
OpTable minority_from_chain(const ChainE& chain);

struct PhiSignature {
  std::uint32_t range_mask = 0;
  element_t value_at_center = 0;
  int o_class = 0; // 0 iff some box C_1 x...x C_n with c in C_i != A covers the range

  bool operator==(const PhiSignature&) const = default;
  auto operator<=>(const PhiSignature&) const = default;
};

PhiSignature phi_signature(const OpTable& f, element_t c, const Budgets& budgets = {});

// Subsets D_1..D_n with |D_i| < |range f| and f[D_1 x...x D_n] = range f.
std::optional<std::vector<std::vector<element_t>>> jablonskii_cover(const OpTable& f);

enum class Family {
  central_r,         // 2n-ary family against an r-ary central relation, 2 <= r <= k-2
  slupecki_bk2,      // n-ary family inside B_{k-2}, k > 3
  hreg_multi,        // h-regular family with r >= 2 members
  hreg_single,       // single equivalence with h >= 3 blocks
  slup_central,      // Pol sigma_c ∩ B_{k-1}
  slup_subset,       // Pol B ∩ B_{k-1}, |B| >= 2
  slup_eqrel,        // Pol eps ∩ B_{k-1}, arity k*n
  centralk1_subset1, // Pol B ∩ Pol sigma_0, 0 in B
  centralk1_subset2, // Pol B ∩ Pol sigma_0, 0 not in B
  centralk1_eqrel,   // Pol eps ∩ Pol sigma_0
};

std::string family_name(Family family);
std::optional<Family> family_from_name(const std::string& name);

struct FamilySpec {
  Family family = Family::slup_central;
  int k = 0;
  int n = 0;                           // family index
  int r = 0;                           // central_r: arity of the central relation
  std::vector<element_t> subset_b;     // slup_subset, centralk1_subset*
  std::optional<Relation> epsilon;     // slup_eqrel, centralk1_eqrel
  std::optional<Relation> theta;       // hreg_single
  std::optional<HRegularFamily> hreg;  // hreg_multi
};

// The constructed table plus the named special tuples its case analysis uses.
struct WitnessData {
  OpTable op;
  std::map<std::string, std::vector<std::vector<element_t>>> tuples;
};

// Builds the family member exactly per its published case analysis. Cases
// are evaluated in written order with a construction-time disjointness
// audit; an inconsistent overlap aborts.
WitnessData witness_family(const FamilySpec& spec);

struct SanityCheck {
  std::string id;
  bool pass = false;
  std::string detail;
};

struct SanityReport {
  std::vector<SanityCheck> checks;
  bool all_pass() const;
};

// Machine-checks the tuple-level combinatorial claims the corresponding
// proof uses for this family member (dependence, membership patterns,
// case consistency). Failures are report entries, not errors.
SanityReport family_sanity(const FamilySpec& spec);

// The probe tuples (1,..,1,0,2,0,1,..,1) used against sigma_0,
// with the 2 at 1-based position i, for 2 <= i <= n-1.
std::vector<element_t> e_tuple(int k, int n, int i);

// Rotation tuples (a, a+1, ..., k-1, 0, ..., a-1, a-1, ..., a-1), length n >= k.
std::vector<element_t> rotation_tuple(int k, int n, element_t a);

// Blockwise rotation tuples of length k*n: k constant n-blocks starting at a.
std::vector<element_t> block_rotation_tuple(int k, int n, element_t a);

// (e_i, e_j, const-3, ..., const-(k-1)) in sigma_0^n iff j - i <= 1, checked
// exhaustively for 2 <= i <= j <= n-1.
bool check_e_tuple_iff(int k, int n);

} // namespace clonekit

#endif
