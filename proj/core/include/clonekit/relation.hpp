#ifndef CLONEKIT_RELATION_HPP
#define CLONEKIT_RELATION_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonekit/common.hpp"
#include "clonekit/op_table.hpp"
#include "clonekit/perm_group.hpp"

namespace clonekit {

// An r-ary relation on A as a dense membership table over k^r tuple slots.
class Relation {
public:
  Relation() = default;
  Relation(int k, int arity); // empty

  static Relation from_tuples(int k, int arity,
                              const std::vector<std::vector<element_t>>& tuples);
  static Relation full(int k, int arity);
  static Relation equality(int k);     // 0_A
  static Relation all_pairs(int k);    // 1_A
  static Relation from_partition(int k, const std::vector<std::vector<element_t>>& blocks);
  static Relation graph_of(const OpTable& unary); // binary graph {(a, u(a))}
  static Relation subset(int k, const std::vector<element_t>& members); // unary

  int k() const { return k_; }
  int arity() const { return arity_; }
  std::uint64_t slots() const { return member_.size(); }

  bool contains_index(std::uint64_t idx) const { return member_[idx] != 0; }
  bool contains(std::span<const element_t> t) const;
  void insert(std::span<const element_t> t);
  void insert_index(std::uint64_t idx) { member_[idx] = 1; }

  std::uint64_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::vector<element_t>> tuples() const;

  bool subset_of(const Relation& o) const;
  bool operator==(const Relation&) const = default;

  // equivalence-relation queries (arity 2)
  bool is_equivalence() const;
  std::vector<std::vector<element_t>> blocks() const; // ordered by least element
  std::vector<int> block_index() const;               // element -> block id

private:
  int k_ = 0;
  int arity_ = 0;
  std::vector<char> member_;
};

// f preserves rho: every arity(f)-column matrix of rho-members maps rowwise
// back into rho. Cost |rho|^arity(f); fine at desk scale.
bool preserves(const OpTable& f, const Relation& rho);

// The natural action f^theta on block indices (blocks ordered by least
// element). f must preserve theta.
OpTable quotient_op(const OpTable& f, const Relation& theta);

// Membership of an s-tuple of n-tuples in rho^n (coordinatewise rho).
bool power_related(const Relation& rho, const std::vector<std::vector<element_t>>& rows);

// Totally reflexive / totally symmetric tests (any arity).
bool totally_reflexive(const Relation& rho);
bool totally_symmetric(const Relation& rho);

// The unique (k-1)-ary central relation with central element c.
Relation make_central_sigma(int k, element_t c);

struct CentralityReport {
  enum class Reason { ok, not_reflexive, not_symmetric, trivial };
  Reason reason = Reason::ok;
  std::vector<element_t> centers;
};
CentralityReport validate_central(const Relation& rho);

// An h-regular family: equivalences with exactly h >= 3 blocks each, every
// choice of one block per member having nonempty intersection.
struct HRegularFamily {
  int k = 0;
  int h = 0;
  std::vector<Relation> thetas;
};
bool validate_h_regular(const HRegularFamily& fam, std::string* why = nullptr);
Relation make_h_regular(const HRegularFamily& fam);

// 4-ary graph {(x,y,z,w) : w = x - y + z} of an elementary abelian p-group
// given by its addition table.
Relation make_prime_affine(int k, const std::vector<std::vector<element_t>>& add);

bool is_bounded_order(const Relation& rho, element_t* least = nullptr,
                      element_t* greatest = nullptr);
bool is_prime_permutation(const OpTable& unary);

// A chain rho_1 < ... < rho_r of nontrivial equivalence relations. The
// implicit bottom 0_A and top 1_A are synthesized where needed.
struct ChainE {
  int k = 0;
  std::vector<Relation> relations;
};

ChainE make_chain(int k, const std::vector<std::vector<std::vector<element_t>>>& partitions);
void validate_chain(const ChainE& chain);
bool is_chain(const std::vector<Relation>& eqs);

// Least level l in 0..r+1 with (a,b) in rho_l, where rho_0 = 0_A and
// rho_{r+1} = 1_A.
int chain_level(const ChainE& chain, element_t a, element_t b);

// All E-invariant permutations of A (filter over the symmetric group).
PermGroup aut_of_chain(const ChainE& chain);

} // namespace clonekit

#endif
