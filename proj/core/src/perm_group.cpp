#include "clonekit/perm_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "clonekit/op_table.hpp"

namespace clonekit {

namespace {

bool is_permutation(const std::vector<element_t>& p, int k) {
  if (static_cast<int>(p.size()) != k)
    return false;
  std::vector<bool> seen(k, false);
  for (element_t a : p) {
    if (a >= k || seen[a])
      return false;
    seen[a] = true;
  }
  return true;
}

std::vector<element_t> compose_perm(const std::vector<element_t>& g,
                                    const std::vector<element_t>& h) {
  std::vector<element_t> r(g.size());
  for (std::size_t a = 0; a < g.size(); ++a)
    r[a] = g[h[a]];
  return r;
}

} // namespace

void PermGroup::finish() {
  std::sort(perms_.begin(), perms_.end());
  perms_.erase(std::unique(perms_.begin(), perms_.end()), perms_.end());

  std::vector<element_t> id(k_);
  std::iota(id.begin(), id.end(), element_t{0});
  if (perms_.empty() || perms_.front() != id)
    throw structural_error("PermGroup: identity missing (must be element 0)");

  std::map<std::vector<element_t>, int> index;
  for (std::size_t i = 0; i < perms_.size(); ++i)
    index[perms_[i]] = static_cast<int>(i);

  int n = order();
  mult_.assign(n, std::vector<int>(n, -1));
  inv_.assign(n, -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      auto it = index.find(compose_perm(perms_[g], perms_[h]));
      if (it == index.end())
        throw structural_error("PermGroup: not closed under composition");
      mult_[g][h] = it->second;
      if (it->second == 0)
        inv_[g] = h;
    }
    if (inv_[g] < 0)
      throw structural_error("PermGroup: missing inverse");
  }
}

PermGroup PermGroup::symmetric(int k) {
  check_domain(k);
  PermGroup g;
  g.k_ = k;
  std::vector<element_t> p(k);
  std::iota(p.begin(), p.end(), element_t{0});
  do {
    g.perms_.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  g.finish();
  return g;
}

PermGroup PermGroup::trivial(int k) {
  check_domain(k);
  PermGroup g;
  g.k_ = k;
  std::vector<element_t> id(k);
  std::iota(id.begin(), id.end(), element_t{0});
  g.perms_.push_back(std::move(id));
  g.finish();
  return g;
}

PermGroup PermGroup::from_elements(int k, std::vector<std::vector<element_t>> elements) {
  check_domain(k);
  PermGroup g;
  g.k_ = k;
  for (const auto& p : elements)
    if (!is_permutation(p, k))
      throw structural_error("PermGroup: element is not a permutation of A");
  g.perms_ = std::move(elements);
  g.finish();
  return g;
}

PermGroup PermGroup::generated(int k, const std::vector<std::vector<element_t>>& gens) {
  check_domain(k);
  for (const auto& p : gens)
    if (!is_permutation(p, k))
      throw structural_error("PermGroup: generator is not a permutation of A");
  std::vector<element_t> id(k);
  std::iota(id.begin(), id.end(), element_t{0});
  std::set<std::vector<element_t>> closure{id};
  std::vector<std::vector<element_t>> work{id};
  while (!work.empty()) {
    auto cur = work.back();
    work.pop_back();
    for (const auto& p : gens) {
      auto next = compose_perm(p, cur);
      if (closure.insert(next).second)
        work.push_back(next);
    }
  }
  PermGroup g;
  g.k_ = k;
  g.perms_.assign(closure.begin(), closure.end());
  g.finish();
  return g;
}

int PermGroup::index_of(std::span<const element_t> p) const {
  std::vector<element_t> key(p.begin(), p.end());
  auto it = std::lower_bound(perms_.begin(), perms_.end(), key);
  if (it == perms_.end() || *it != key)
    return -1;
  return static_cast<int>(it - perms_.begin());
}

std::uint64_t PermGroup::act_tuple(int g, std::uint64_t tuple_index, int n) const {
  const std::vector<element_t>& p = perms_[g];
  std::uint64_t out = 0;
  std::uint64_t stride = ipow(k_, n - 1);
  std::uint64_t rest = tuple_index;
  for (int i = 0; i < n; ++i) {
    out = out * k_ + p[rest / stride];
    rest %= stride;
    stride /= k_;
  }
  return out;
}

PointedOrbit orbit_and_stabilizer(const PermGroup& group, std::uint64_t point, int n) {
  if (group.order() > 64)
    throw budget_error("orbit_and_stabilizer: group order exceeds 64-bit stabilizer mask");
  PointedOrbit po;
  po.n = n;
  po.point = point;
  std::set<std::uint64_t> orbit;
  for (int g = 0; g < group.order(); ++g) {
    std::uint64_t img = group.act_tuple(g, point, n);
    orbit.insert(img);
    if (img == point)
      po.stabilizer_mask |= (std::uint64_t{1} << g);
  }
  po.orbit.assign(orbit.begin(), orbit.end());
  return po;
}

PointedOrbit orbit_and_stabilizer(const PermGroup& group, std::span<const element_t> point) {
  return orbit_and_stabilizer(group, encode_tuple(point, group.k()),
                              static_cast<int>(point.size()));
}

} // namespace clonekit
