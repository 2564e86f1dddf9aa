#ifndef CLONEKIT_CLONE_SEARCH_HPP
#define CLONEKIT_CLONE_SEARCH_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "clonekit/clone_spec.hpp"

namespace clonekit {

// Session cache for enumerated clone parts and pairwise minor decisions,
// keyed by the canonical spec serialization. Safe for concurrent use.
class CloneCache {
public:
  std::shared_ptr<const std::vector<OpTable>> find_enum(const std::string& key, int n);
  void store_enum(const std::string& key, int n, std::vector<OpTable> ops);
  std::optional<bool> find_minor(const std::string& key, const OpTable& f, const OpTable& g);
  void store_minor(const std::string& key, const OpTable& f, const OpTable& g, bool value);

private:
  std::mutex mu_;
  std::map<std::pair<std::string, int>, std::shared_ptr<const std::vector<OpTable>>> enums_;
  std::map<std::string, bool> minors_;
};

// All n-ary members of <gens>: fixpoint from the n-ary projections under
// composition with the generators. This is exact for the n-ary part, since
// every n-ary member of the generated clone has a term whose subterms are
// n-ary.
std::vector<OpTable> close_generators(int k, const std::vector<OpTable>& gens, int n,
                                      const Budgets& budgets = {});

// Exactly the n-ary members of the clone, sorted, each once.
std::vector<OpTable> enum_clone_ops(const CloneSpec& spec, int n, const Budgets& budgets = {},
                                    CloneCache* cache = nullptr);

// A substitution witness: f = g o hs with every component in the clone.
struct MinorWitness {
  OpVector hs;
};

// Decide f ⊑_C g by assigning h(x) in g^{-1}(f(x)) pointwise, tuples in
// increasing index order and candidate values in increasing encoded order,
// with incremental preservation pruning. Every returned witness is
// re-verified (composition and membership) before being handed out.
std::optional<MinorWitness> is_minor(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                                     const Budgets& budgets = {}, CloneCache* cache = nullptr);

bool is_minor_decision(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                       const Budgets& budgets = {}, CloneCache* cache = nullptr);

bool are_equivalent(const OpTable& f, const OpTable& g, const CloneSpec& spec,
                    const Budgets& budgets = {}, CloneCache* cache = nullptr);

struct ClassPartition {
  std::vector<OpTable> items;
  std::vector<int> class_id; // parallel to items
  int class_count = 0;
};

// Partition by mutual minors. Classification is representative-based (each
// item is matched both ways against class representatives), which yields the
// ≡-partition since ⊑ is a quasiorder.
ClassPartition partition_classes(const std::vector<OpTable>& ops, const CloneSpec& spec,
                                 const Budgets& budgets = {}, CloneCache* cache = nullptr);

// The restriction clone C_B: f' on B is a member iff some extension of f'
// to A lies in C ∩ Pol B. Elements of B are coded 0..|B|-1 in ascending
// order of the underlying elements of A.
class RestrictedClone {
public:
  RestrictedClone(CloneSpec spec, std::vector<element_t> b, Budgets budgets = {});
  const std::vector<element_t>& subset() const { return b_; }
  bool contains(const OpTable& f_on_b) const;
  std::vector<OpTable> enumerate(int n) const; // n-ary members of C_B

private:
  CloneSpec spec_;
  std::vector<element_t> b_;
  Budgets budgets_;
};

RestrictedClone restrict_clone(const CloneSpec& spec, std::vector<element_t> b,
                               const Budgets& budgets = {});

struct GrowthRow {
  int n = 0;
  std::uint64_t count = 0;
  double kkn = 0.0;     // k^(k^n / n)
  double ratio = 0.0;   // count / kkn
  std::optional<double> gilbert_bound;  // 2^C(n, floor(n/2))
  bool gilbert_ok = false;              // count >= gilbert bound
  std::optional<double> affine_bound;   // k^(r n + 1) when k = p^r
  bool affine_ok = false;               // count <= affine bound
};

// Exact |C^(n)| for n = 1..n_max with the quantitative bounds; emits the
// numbers only, no F_A inference.
std::vector<GrowthRow> growth_report(const CloneSpec& spec, int n_max,
                                     const Budgets& budgets = {}, CloneCache* cache = nullptr);

} // namespace clonekit

#endif
