#ifndef CLONEKIT_PERM_GROUP_HPP
#define CLONEKIT_PERM_GROUP_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "clonekit/common.hpp"

namespace clonekit {

// A permutation group on A = {0..k-1}, stored as the full element list in a
// canonical order (sorted lexicographically, so the identity is element 0),
// with precomputed composition and inverse tables.
class PermGroup {
public:
  static PermGroup symmetric(int k);
  static PermGroup trivial(int k);
  static PermGroup from_elements(int k, std::vector<std::vector<element_t>> elements);
  static PermGroup generated(int k, const std::vector<std::vector<element_t>>& gens);

  int k() const { return k_; }
  int order() const { return static_cast<int>(perms_.size()); }
  const std::vector<element_t>& perm(int g) const { return perms_[g]; }
  element_t apply(int g, element_t a) const { return perms_[g][a]; }

  // index of g∘h, i.e. apply h first: (g∘h)(a) = g(h(a))
  int compose(int g, int h) const { return mult_[g][h]; }
  int inverse(int g) const { return inv_[g]; }
  int index_of(std::span<const element_t> p) const; // -1 if absent

  // coordinatewise action on an encoded n-tuple
  std::uint64_t act_tuple(int g, std::uint64_t tuple_index, int n) const;

  bool operator==(const PermGroup& o) const { return k_ == o.k_ && perms_ == o.perms_; }

private:
  int k_ = 0;
  std::vector<std::vector<element_t>> perms_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;

  void finish(); // sort, validate closure, build tables
};

// The orbit and stabilizer of a tuple under the coordinatewise action.
// Group order must fit the 64-bit stabilizer mask.
struct PointedOrbit {
  int n = 0;
  std::uint64_t point = 0;             // encoded tuple
  std::vector<std::uint64_t> orbit;    // sorted encoded tuples
  std::uint64_t stabilizer_mask = 0;   // bit g set iff g·point = point
};

PointedOrbit orbit_and_stabilizer(const PermGroup& group, std::span<const element_t> point);
PointedOrbit orbit_and_stabilizer(const PermGroup& group, std::uint64_t point, int n);

} // namespace clonekit

#endif
