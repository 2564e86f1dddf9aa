#ifndef CLONEKIT_GROUP_TREES_HPP
#define CLONEKIT_GROUP_TREES_HPP

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "clonekit/clone_search.hpp"
#include "clonekit/relation.hpp"

namespace clonekit {

// The label of a leaf (0, x) for an operation g: the restriction of g to the
// pointed orbit (Γx, x), stored as coordinate set, stabilizer and the full
// value sequence gamma -> g(gamma·x). Two labels are equal exactly when the
// underlying restrictions are ~-equivalent, so values from different source
// arities stay comparable.
struct LeafLabel {
  std::uint32_t coord_mask = 0;  // set of coordinates of the base tuple
  std::uint64_t stab_mask = 0;   // stabilizer of the base tuple in Γ
  std::vector<element_t> values; // values[g] = op(g·x), length |Γ|

  bool operator==(const LeafLabel&) const = default;
  auto operator<=>(const LeafLabel&) const = default;
};

LeafLabel label_of(const OpTable& g, std::span<const element_t> x, const PermGroup& group);

// mu ⪯ nu: stabilizer containment, coordinate-set containment, equal values.
bool label_leq(const LeafLabel& mu, const LeafLabel& nu);

// gamma·label: base point moves to gamma·x.
LeafLabel label_translate(const LeafLabel& label, int gamma, const PermGroup& group);

// The labeled Γ-tree of an operation over a chain of equivalences: level i
// holds the blocks of rho_i^n (level 0 the tuples, level r+1 the root),
// successor is block containment, Γ acts blockwise, leaves carry labels.
// Subtrees are tracked by per-level presence masks.
struct LabeledTree {
  int k = 0;
  int arity = 0;
  int depth = 0; // r + 1
  PermGroup group;
  std::vector<std::uint64_t> level_size;            // full-tree node counts
  std::vector<std::vector<int>> succ;               // [level<depth][node]
  std::vector<std::vector<std::vector<int>>> action;// [level][g][node]
  std::vector<LeafLabel> leaf_labels;               // level-0 nodes
  std::vector<std::vector<char>> present;           // [level][node]

  std::uint64_t node_count() const;
  std::uint64_t stab_mask(int level, int node) const;
  int orbit_rep(int level, int node) const;
  std::vector<int> orbit_of(int level, int node) const;
  std::vector<int> present_orbit_reps(int level) const;
  bool same_shape(const LabeledTree& other) const; // group and depth agree
};

LabeledTree build_tree(const OpTable& f, const ChainE& chain, const Budgets& budgets = {});

enum class HomMode { preserving, increasing };

// A total node map per level; -1 on absent nodes.
struct TreeHom {
  std::vector<std::vector<int>> map;
};

// Label-preserving or label-increasing Γ-homomorphism P -> Q: root to root,
// successor-commuting, equivariant; None is an answer, not an error.
std::optional<TreeHom> find_hom(const LabeledTree& P, const LabeledTree& Q, HomMode mode,
                                std::mt19937_64* rng = nullptr);

struct CoreTrace {
  struct Step {
    int avoided_level = 0;
    int avoided_node = 0;
    std::uint64_t nodes_before = 0;
    std::uint64_t nodes_after = 0;
  };
  std::vector<Step> steps;
};

// Image-restriction iteration: repeatedly find a non-surjective
// label-preserving endomorphism and keep only its image.
LabeledTree core_of(const LabeledTree& P, CoreTrace* trace = nullptr,
                    std::mt19937_64* rng = nullptr);

// A non-surjective label-preserving endomorphism, or nothing when P is a
// core.
std::optional<TreeHom> nonsurjective_endomorphism(const LabeledTree& P,
                                                  std::mt19937_64* rng = nullptr);

// Canonical code: per orbit of a node's children, the least
// (stabilizer, child code) pair over the orbit, sorted; leaf codes are the
// label data. Codes are equal exactly for isomorphic labeled Γ-trees.
std::string canonical_code(const LabeledTree& P);

bool trees_isomorphic(const LabeledTree& P, const LabeledTree& Q);

// f ⊑ g for the clone Pol(E, Aut E, P+(A)), decided on the cores.
bool minor_via_trees(const OpTable& f, const OpTable& g, const ChainE& chain,
                     const Budgets& budgets = {});

// Partition by mutual label-increasing homomorphisms between cores;
// isomorphic cores short-circuit to equivalent.
ClassPartition count_classes_tree(const std::vector<OpTable>& ops, const ChainE& chain,
                                  const Budgets& budgets = {});

// k^(k + 2|Γ|), the bound on the number of ~-classes of labels.
double label_class_bound(const ChainE& chain);

// log2 of the recursive bound on nonisomorphic cores of uniform depth d:
// 2^s with s summed over subgroups, down to the label count at depth 0.
// The tower leaves double range almost immediately; +infinity then.
double core_type_bound_log2(const PermGroup& group, int depth, double label_count);

} // namespace clonekit

#endif
