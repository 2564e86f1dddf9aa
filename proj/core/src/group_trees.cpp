#include "clonekit/group_trees.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <map>
#include <numeric>
#include <sstream>

namespace clonekit {

LeafLabel label_of(const OpTable& g, std::span<const element_t> x, const PermGroup& group) {
  if (group.order() > 64)
    throw budget_error("label_of: group order exceeds 64-bit stabilizer mask");
  if (static_cast<int>(x.size()) != g.arity)
    throw structural_error("label_of: tuple length != operation arity");
  LeafLabel label;
  for (element_t a : x)
    label.coord_mask |= (1u << a);
  const int n = g.arity;
  std::uint64_t xi = encode_tuple(x, g.k);
  label.values.resize(group.order());
  for (int gamma = 0; gamma < group.order(); ++gamma) {
    std::uint64_t img = group.act_tuple(gamma, xi, n);
    label.values[gamma] = g.table[img];
    if (img == xi)
      label.stab_mask |= (std::uint64_t{1} << gamma);
  }
  return label;
}

bool label_leq(const LeafLabel& mu, const LeafLabel& nu) {
  if (mu.values.size() != nu.values.size())
    throw structural_error("label_leq: labels over different groups");
  return (mu.stab_mask & ~nu.stab_mask) == 0 && (nu.coord_mask & ~mu.coord_mask) == 0 &&
         mu.values == nu.values;
}

LeafLabel label_translate(const LeafLabel& label, int gamma, const PermGroup& group) {
  LeafLabel out;
  for (int a = 0; a < group.k(); ++a)
    if (label.coord_mask & (1u << a))
      out.coord_mask |= (1u << group.apply(gamma, static_cast<element_t>(a)));
  int inv = group.inverse(gamma);
  for (int s = 0; s < group.order(); ++s)
    if (label.stab_mask & (std::uint64_t{1} << s))
      out.stab_mask |= (std::uint64_t{1} << group.compose(group.compose(gamma, s), inv));
  out.values.resize(label.values.size());
  for (int d = 0; d < group.order(); ++d)
    out.values[d] = label.values[group.compose(d, gamma)];
  return out;
}

std::uint64_t LabeledTree::node_count() const {
  std::uint64_t total = 0;
  for (const auto& lvl : present)
    total += static_cast<std::uint64_t>(std::count(lvl.begin(), lvl.end(), 1));
  return total;
}

std::uint64_t LabeledTree::stab_mask(int level, int node) const {
  std::uint64_t mask = 0;
  for (int g = 0; g < group.order(); ++g)
    if (action[level][g][node] == node)
      mask |= (std::uint64_t{1} << g);
  return mask;
}

int LabeledTree::orbit_rep(int level, int node) const {
  int rep = node;
  for (int g = 0; g < group.order(); ++g)
    rep = std::min(rep, action[level][g][node]);
  return rep;
}

std::vector<int> LabeledTree::orbit_of(int level, int node) const {
  std::vector<int> orbit;
  for (int g = 0; g < group.order(); ++g)
    orbit.push_back(action[level][g][node]);
  std::sort(orbit.begin(), orbit.end());
  orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
  return orbit;
}

std::vector<int> LabeledTree::present_orbit_reps(int level) const {
  std::vector<int> reps;
  for (std::uint64_t v = 0; v < level_size[level]; ++v) {
    if (!present[level][v])
      continue;
    if (orbit_rep(level, static_cast<int>(v)) == static_cast<int>(v))
      reps.push_back(static_cast<int>(v));
  }
  return reps;
}

bool LabeledTree::same_shape(const LabeledTree& other) const {
  return depth == other.depth && group == other.group;
}

LabeledTree build_tree(const OpTable& f, const ChainE& chain, const Budgets& budgets) {
  validate_chain(chain);
  if (f.k != chain.k)
    throw structural_error("build_tree: domain mismatch");
  LabeledTree tree;
  tree.k = f.k;
  tree.arity = f.arity;
  const int r = static_cast<int>(chain.relations.size());
  tree.depth = r + 1;
  tree.group = aut_of_chain(chain);
  if (tree.group.order() > 64)
    throw budget_error("build_tree: group order exceeds stabilizer mask width");

  const int n = f.arity;
  const int k = f.k;
  if (ipow(k, n) > budgets.max_cells)
    throw budget_error("build_tree: leaf level exceeds cell budget");

  // per level: element -> block id (level 0 equality, level r+1 full)
  std::vector<std::vector<int>> elem_block(r + 2);
  std::vector<int> block_count(r + 2);
  elem_block[0].resize(k);
  std::iota(elem_block[0].begin(), elem_block[0].end(), 0);
  block_count[0] = k;
  for (int i = 1; i <= r; ++i) {
    elem_block[i] = chain.relations[i - 1].block_index();
    block_count[i] = *std::max_element(elem_block[i].begin(), elem_block[i].end()) + 1;
  }
  elem_block[r + 1].assign(k, 0);
  block_count[r + 1] = 1;

  tree.level_size.resize(r + 2);
  for (int i = 0; i <= r + 1; ++i)
    tree.level_size[i] = ipow(block_count[i], n);

  // successor: digitwise refinement map from level i blocks to level i+1
  tree.succ.resize(r + 1);
  for (int i = 0; i <= r; ++i) {
    std::vector<int> refine(block_count[i], -1);
    for (int a = 0; a < k; ++a)
      refine[elem_block[i][a]] = elem_block[i + 1][a];
    tree.succ[i].resize(tree.level_size[i]);
    for (std::uint64_t v = 0; v < tree.level_size[i]; ++v) {
      std::uint64_t out = 0, rest = v;
      std::uint64_t stride = ipow(block_count[i], n - 1);
      for (int j = 0; j < n; ++j) {
        out = out * block_count[i + 1] + refine[rest / stride];
        rest %= stride;
        stride /= block_count[i];
      }
      tree.succ[i][v] = static_cast<int>(out);
    }
  }

  // blockwise group action per level
  tree.action.resize(r + 2);
  for (int i = 0; i <= r + 1; ++i) {
    tree.action[i].resize(tree.group.order());
    // block permutation induced on level-i blocks by each gamma
    std::vector<element_t> least(block_count[i], 0);
    {
      std::vector<bool> seen(block_count[i], false);
      for (int a = 0; a < k; ++a)
        if (!seen[elem_block[i][a]]) {
          seen[elem_block[i][a]] = true;
          least[elem_block[i][a]] = static_cast<element_t>(a);
        }
    }
    for (int g = 0; g < tree.group.order(); ++g) {
      std::vector<int> bperm(block_count[i]);
      for (int b = 0; b < block_count[i]; ++b)
        bperm[b] = elem_block[i][tree.group.apply(g, least[b])];
      tree.action[i][g].resize(tree.level_size[i]);
      for (std::uint64_t v = 0; v < tree.level_size[i]; ++v) {
        std::uint64_t out = 0, rest = v;
        std::uint64_t stride = ipow(block_count[i], n - 1);
        for (int j = 0; j < n; ++j) {
          out = out * block_count[i] + bperm[rest / stride];
          rest %= stride;
          stride /= block_count[i];
        }
        tree.action[i][g][v] = static_cast<int>(out);
      }
    }
  }

  tree.leaf_labels.resize(tree.level_size[0]);
  std::vector<element_t> tup(n);
  for (std::uint64_t x = 0; x < tree.level_size[0]; ++x) {
    decode_tuple(x, k, tup);
    tree.leaf_labels[x] = label_of(f, tup, tree.group);
  }

  tree.present.resize(r + 2);
  for (int i = 0; i <= r + 1; ++i)
    tree.present[i].assign(tree.level_size[i], 1);
  return tree;
}

// ---------------------------------------------------------------------------
// Homomorphism search
// ---------------------------------------------------------------------------

namespace {

struct HomSearch {
  const LabeledTree& P;
  const LabeledTree& Q;
  HomMode mode;
  std::mt19937_64* rng;
  int avoid_level = -1;
  int avoid_rep = -1; // orbit representative in Q to avoid

  std::vector<std::vector<int>> map;
  // processing order: one entry per present P-orbit, root excluded
  struct Slot {
    int level;
    int rep;
  };
  std::vector<Slot> slots;

  HomSearch(const LabeledTree& p, const LabeledTree& q, HomMode m, std::mt19937_64* r)
      : P(p), Q(q), mode(m), rng(r) {
    if (!P.same_shape(Q))
      throw structural_error("find_hom: trees over different groups or depths");
    map.resize(P.depth + 1);
    for (int i = 0; i <= P.depth; ++i)
      map[i].assign(P.level_size[i], -1);
    for (int level = P.depth - 1; level >= 0; --level)
      for (int rep : P.present_orbit_reps(level))
        slots.push_back({level, rep});
  }

  bool in_avoided_orbit(int level, int node) const {
    return level == avoid_level && Q.orbit_rep(level, node) == avoid_rep;
  }

  std::optional<TreeHom> run() {
    map[P.depth][0] = 0; // root to root
    if (descend(0))
      return TreeHom{map};
    return std::nullopt;
  }

  bool descend(std::size_t s) {
    if (s == slots.size())
      return true;
    const int level = slots[s].level;
    const int a = slots[s].rep;
    const std::uint64_t stab_a = P.stab_mask(level, a);
    const int parent_image = map[level + 1][P.succ[level][a]];

    std::vector<int> cands;
    for (std::uint64_t b = 0; b < Q.level_size[level]; ++b) {
      if (!Q.present[level][b])
        continue;
      if (Q.succ[level][b] != parent_image)
        continue;
      if (in_avoided_orbit(level, static_cast<int>(b)))
        continue;
      if ((stab_a & ~Q.stab_mask(level, static_cast<int>(b))) != 0)
        continue;
      if (level == 0) {
        const LeafLabel& la = P.leaf_labels[a];
        const LeafLabel& lb = Q.leaf_labels[b];
        bool ok = mode == HomMode::preserving ? la == lb : label_leq(la, lb);
        if (!ok)
          continue;
      }
      cands.push_back(static_cast<int>(b));
    }
    if (rng)
      std::shuffle(cands.begin(), cands.end(), *rng);

    for (int b : cands) {
      // equivariant extension over the whole orbit of a
      std::vector<std::pair<int, int>> placed;
      bool consistent = true;
      for (int g = 0; g < P.group.order() && consistent; ++g) {
        int an = P.action[level][g][a];
        int bn = Q.action[level][g][b];
        if (map[level][an] == -1) {
          map[level][an] = bn;
          placed.push_back({an, bn});
        } else {
          consistent = map[level][an] == bn;
        }
      }
      if (consistent && descend(s + 1))
        return true;
      for (auto& [an, bn] : placed)
        map[level][an] = -1;
    }
    return false;
  }
};

LabeledTree restrict_to_image(const LabeledTree& P, const TreeHom& hom) {
  LabeledTree out = P;
  for (int level = 0; level <= P.depth; ++level) {
    std::vector<char> mask(P.level_size[level], 0);
    for (std::uint64_t v = 0; v < P.level_size[level]; ++v)
      if (P.present[level][v])
        mask[hom.map[level][v]] = 1;
    out.present[level] = std::move(mask);
  }
  return out;
}

// A non-surjective label-preserving endomorphism, if any exists: for each
// present non-root orbit, search for an endomorphism avoiding it.
std::optional<TreeHom> find_nonsurjective_endo(const LabeledTree& P, CoreTrace::Step* step,
                                               std::mt19937_64* rng) {
  std::vector<std::pair<int, int>> orbits;
  for (int level = P.depth - 1; level >= 0; --level)
    for (int rep : P.present_orbit_reps(level))
      orbits.push_back({level, rep});
  if (rng)
    std::shuffle(orbits.begin(), orbits.end(), *rng);
  for (auto& [level, rep] : orbits) {
    HomSearch search(P, P, HomMode::preserving, rng);
    search.avoid_level = level;
    search.avoid_rep = rep;
    if (auto hom = search.run()) {
      if (step) {
        step->avoided_level = level;
        step->avoided_node = rep;
      }
      return hom;
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<TreeHom> find_hom(const LabeledTree& P, const LabeledTree& Q, HomMode mode,
                                std::mt19937_64* rng) {
  HomSearch search(P, Q, mode, rng);
  return search.run();
}

std::optional<TreeHom> nonsurjective_endomorphism(const LabeledTree& P, std::mt19937_64* rng) {
  return find_nonsurjective_endo(P, nullptr, rng);
}

LabeledTree core_of(const LabeledTree& P, CoreTrace* trace, std::mt19937_64* rng) {
  LabeledTree current = P;
  while (true) {
    CoreTrace::Step step;
    step.nodes_before = current.node_count();
    auto endo = find_nonsurjective_endo(current, &step, rng);
    if (!endo)
      break;
    current = restrict_to_image(current, *endo);
    step.nodes_after = current.node_count();
    if (step.nodes_after >= step.nodes_before)
      throw structural_error("core_of: internal error, no strict decrease");
    if (trace)
      trace->steps.push_back(step);
  }
  return current;
}

// ---------------------------------------------------------------------------
// Canonical code and isomorphism
// ---------------------------------------------------------------------------

namespace {

struct Coder {
  const LabeledTree& T;
  std::map<std::tuple<int, int, std::uint64_t>, std::string> memo;

  std::string leaf_code(int node) const {
    const LeafLabel& l = T.leaf_labels[node];
    std::ostringstream os;
    os << "L" << l.coord_mask << "." << l.stab_mask << ".";
    for (element_t v : l.values)
      os << static_cast<int>(v) << ',';
    return os.str();
  }

  // code of the subtree rooted at node (level >= 1) as an H-tree, H given as
  // a subgroup mask of Γ
  std::string code(int level, int node, std::uint64_t hmask) {
    if (level == 0)
      return leaf_code(node);
    auto key = std::make_tuple(level, node, hmask);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;

    // children of node present in the tree
    std::vector<int> children;
    for (std::uint64_t c = 0; c < T.level_size[level - 1]; ++c)
      if (T.present[level - 1][c] && T.succ[level - 1][c] == node)
        children.push_back(static_cast<int>(c));

    // H-orbits of children
    std::vector<char> done(children.size(), 0);
    std::vector<std::string> orbit_codes;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (done[i])
        continue;
      std::vector<int> orbit;
      for (int g = 0; g < T.group.order(); ++g) {
        if (!(hmask & (std::uint64_t{1} << g)))
          continue;
        orbit.push_back(T.action[level - 1][g][children[i]]);
      }
      std::sort(orbit.begin(), orbit.end());
      orbit.erase(std::unique(orbit.begin(), orbit.end()), orbit.end());
      for (std::size_t j = 0; j < children.size(); ++j)
        if (std::binary_search(orbit.begin(), orbit.end(), children[j]))
          done[j] = 1;
      // least (stabilizer-in-H, child code) pair over the orbit
      std::string best;
      for (int c : orbit) {
        std::uint64_t stab = T.stab_mask(level - 1, c) & hmask;
        std::ostringstream os;
        os << stab << '|' << code(level - 1, c, stab);
        std::string s = os.str();
        if (best.empty() || s < best)
          best = s;
      }
      orbit_codes.push_back(std::move(best));
    }
    std::sort(orbit_codes.begin(), orbit_codes.end());
    std::ostringstream os;
    os << '{';
    for (const std::string& s : orbit_codes)
      os << s << ';';
    os << '}';
    std::string out = os.str();
    memo[key] = out;
    return out;
  }
};

} // namespace

std::string canonical_code(const LabeledTree& P) {
  Coder coder{P};
  std::uint64_t full = P.group.order() == 64 ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << P.group.order()) - 1;
  std::ostringstream os;
  os << "d" << P.depth << "g" << P.group.order() << ":" << coder.code(P.depth, 0, full);
  return os.str();
}

bool trees_isomorphic(const LabeledTree& P, const LabeledTree& Q) {
  if (!P.same_shape(Q))
    return false;
  return canonical_code(P) == canonical_code(Q);
}

bool minor_via_trees(const OpTable& f, const OpTable& g, const ChainE& chain,
                     const Budgets& budgets) {
  if (f.k != g.k || f.k != chain.k)
    throw structural_error("minor_via_trees: domain mismatch");
  LabeledTree pf = core_of(build_tree(f, chain, budgets));
  LabeledTree pg = core_of(build_tree(g, chain, budgets));
  return find_hom(pf, pg, HomMode::increasing).has_value();
}

ClassPartition count_classes_tree(const std::vector<OpTable>& ops, const ChainE& chain,
                                  const Budgets& budgets) {
  ClassPartition part;
  part.items = ops;
  part.class_id.assign(ops.size(), -1);

  std::vector<LabeledTree> cores;
  std::vector<std::string> codes;
  cores.reserve(ops.size());
  for (const OpTable& f : ops) {
    cores.push_back(core_of(build_tree(f, chain, budgets)));
    codes.push_back(canonical_code(cores.back()));
  }

  // bucket by canonical code: isomorphic cores are equivalent
  std::map<std::string, int> bucket_of;
  std::vector<std::size_t> bucket_rep;
  std::vector<int> item_bucket(ops.size());
  for (std::size_t i = 0; i < ops.size(); ++i) {
    auto [it, inserted] = bucket_of.try_emplace(codes[i], static_cast<int>(bucket_rep.size()));
    if (inserted)
      bucket_rep.push_back(i);
    item_bucket[i] = it->second;
  }

  // merge buckets linked by mutual label-increasing homs between core reps
  const int nb = static_cast<int>(bucket_rep.size());
  std::vector<int> cls(nb, -1);
  std::vector<int> class_reps;
  for (int b = 0; b < nb; ++b) {
    for (std::size_t c = 0; c < class_reps.size(); ++c) {
      const LabeledTree& tb = cores[bucket_rep[b]];
      const LabeledTree& tc = cores[bucket_rep[class_reps[c]]];
      if (find_hom(tb, tc, HomMode::increasing) && find_hom(tc, tb, HomMode::increasing)) {
        cls[b] = static_cast<int>(c);
        break;
      }
    }
    if (cls[b] < 0) {
      cls[b] = static_cast<int>(class_reps.size());
      class_reps.push_back(b);
    }
  }
  for (std::size_t i = 0; i < ops.size(); ++i)
    part.class_id[i] = cls[item_bucket[i]];
  part.class_count = static_cast<int>(class_reps.size());
  return part;
}

namespace {

std::vector<std::uint64_t> subgroup_masks(const PermGroup& group) {
  // breadth-first closure from each partial generating set
  std::set<std::uint64_t> found;
  std::uint64_t triv = 1; // the identity alone
  found.insert(triv);
  std::vector<std::uint64_t> work{triv};
  auto close = [&](std::uint64_t mask) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int a = 0; a < group.order(); ++a) {
        if (!(mask & (std::uint64_t{1} << a)))
          continue;
        for (int b = 0; b < group.order(); ++b) {
          if (!(mask & (std::uint64_t{1} << b)))
            continue;
          std::uint64_t c = std::uint64_t{1} << group.compose(a, b);
          if (!(mask & c)) {
            mask |= c;
            grew = true;
          }
        }
      }
    }
    return mask;
  };
  while (!work.empty()) {
    std::uint64_t base = work.back();
    work.pop_back();
    for (int g = 0; g < group.order(); ++g) {
      std::uint64_t ext = base | (std::uint64_t{1} << g);
      if (ext == base)
        continue;
      ext = close(ext);
      if (found.insert(ext).second)
        work.push_back(ext);
    }
  }
  return {found.begin(), found.end()};
}

} // namespace

double core_type_bound_log2(const PermGroup& group, int depth, double label_count) {
  if (group.order() > 64)
    throw budget_error("core_type_bound_log2: group too large");
  // memo per (subgroup mask, depth), in log2 space
  std::map<std::pair<std::uint64_t, int>, double> memo;
  auto masks = subgroup_masks(group);
  // subgroups of a subgroup: the masks contained in it
  std::function<double(std::uint64_t, int)> log2_bound = [&](std::uint64_t h, int d) -> double {
    if (d == 0)
      return std::log2(label_count);
    auto key = std::make_pair(h, d);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    double s = 0;
    for (std::uint64_t sub : masks) {
      if ((sub & ~h) != 0)
        continue;
      double l = log2_bound(sub, d - 1);
      s += l >= 1024 ? std::numeric_limits<double>::infinity() : std::exp2(l);
    }
    memo[key] = s;
    return s;
  };
  std::uint64_t full = group.order() == 64 ? ~std::uint64_t{0}
                                           : (std::uint64_t{1} << group.order()) - 1;
  return log2_bound(full, depth);
}

double label_class_bound(const ChainE& chain) {
  PermGroup aut = aut_of_chain(chain);
  return std::pow(double(chain.k), double(chain.k) + 2.0 * aut.order());
}

} // namespace clonekit
