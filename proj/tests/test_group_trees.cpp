#include <doctest.h>

#include <random>
#include <set>

#include "clonekit/experiments.hpp"
#include "clonekit/group_trees.hpp"
#include "clonekit/witnesses.hpp"

using namespace clonekit;

namespace {

// the running example: A = {1,2,3,4} coded as 0..3, rho1 = {0|1|23},
// rho2 = {01|23}
ChainE example_chain() { return make_chain(4, {{{0}, {1}, {2, 3}}, {{0, 1}, {2, 3}}}); }

ChainE single_chain3() { return make_chain(3, {{{0, 1}, {2}}}); }

std::vector<LeafLabel> labels_from_ops(const std::vector<OpTable>& ops, const ChainE& chain) {
  PermGroup aut = aut_of_chain(chain);
  std::set<LeafLabel> out;
  for (const OpTable& g : ops) {
    std::uint64_t sz = ipow(chain.k, g.arity);
    std::vector<element_t> t(g.arity);
    for (std::uint64_t x = 0; x < sz; ++x) {
      decode_tuple(x, chain.k, t);
      out.insert(label_of(g, t, aut));
    }
  }
  return {out.begin(), out.end()};
}

} // namespace

TEST_CASE("the depth-3 unary tree of the four-element example") {
  ChainE chain = example_chain();
  OpTable id4 = projection(4, 1, 1);
  LabeledTree tree = build_tree(id4, chain);
  CHECK(tree.depth == 3);
  CHECK(tree.group.order() == 4);
  REQUIRE(tree.level_size.size() == 4);
  CHECK(tree.level_size[0] == 4);
  CHECK(tree.level_size[1] == 3);
  CHECK(tree.level_size[2] == 2);
  CHECK(tree.level_size[3] == 1);
  CHECK(tree.node_count() == 10);

  // leaf successors follow the block structure: 2 and 3 share their level-1
  // block
  CHECK(tree.succ[0][2] == tree.succ[0][3]);
  CHECK(tree.succ[0][0] != tree.succ[0][1]);
  // and levels 1 -> 2 merge 0 with 1
  CHECK(tree.succ[1][tree.succ[0][0]] == tree.succ[1][tree.succ[0][1]]);
}

TEST_CASE("the example labeling gives four distinct labels") {
  // g maps 1->2, 2->4, 3->4, 4->3 on {1,2,3,4}, coded down to 0..3
  ChainE chain = example_chain();
  OpTable g(4, 1, {1, 3, 3, 2});
  LabeledTree tree = build_tree(g, chain);
  std::set<LeafLabel> distinct(tree.leaf_labels.begin(), tree.leaf_labels.end());
  CHECK(distinct.size() == 4);

  // no two of them are comparable: the coordinate sets are incomparable
  for (const LeafLabel& a : distinct)
    for (const LeafLabel& b : distinct)
      if (!(a == b)) {
        CHECK(!label_leq(a, b));
        CHECK(!label_leq(b, a));
      }
}

TEST_CASE("leaf labeling is equivariant") {
  ChainE chain = single_chain3();
  PermGroup aut = aut_of_chain(chain);
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    int arity = 1 + (round % 2);
    std::vector<element_t> t(ipow(3, arity));
    for (auto& v : t)
      v = static_cast<element_t>(rng() % 3);
    OpTable g(3, arity, std::move(t));
    LabeledTree tree = build_tree(g, chain);
    for (std::uint64_t x = 0; x < tree.level_size[0]; ++x)
      for (int gamma = 0; gamma < aut.order(); ++gamma) {
        int gx = tree.action[0][gamma][x];
        CHECK(tree.leaf_labels[gx] ==
              label_translate(tree.leaf_labels[x], gamma, aut));
      }
  }
}

TEST_CASE("label quasiorder laws over all unary and binary labels") {
  ChainE chain = single_chain3();
  PermGroup aut = aut_of_chain(chain);
  auto ops = all_ops_of_arity(3, 1);
  auto bin = all_ops_of_arity(3, 2);
  ops.insert(ops.end(), bin.begin(), bin.end());
  auto labels = labels_from_ops(ops, chain);
  CAPTURE(labels.size());
  CHECK(labels.size() <= label_class_bound(chain));

  for (const LeafLabel& mu : labels)
    CHECK(label_leq(mu, mu));
  for (const LeafLabel& mu : labels)
    for (const LeafLabel& nu : labels) {
      if (!label_leq(mu, nu))
        continue;
      // antisymmetry down to equality in the stored form
      if (label_leq(nu, mu))
        CHECK(mu == nu);
      // the group acts by automorphisms of the quasiorder
      for (int gamma = 0; gamma < aut.order(); ++gamma)
        CHECK(label_leq(label_translate(mu, gamma, aut), label_translate(nu, gamma, aut)));
      // transitivity
      for (const LeafLabel& lambda : labels)
        if (label_leq(nu, lambda))
          CHECK(label_leq(mu, lambda));
    }
}

TEST_CASE("degenerate chain builds the depth-1 tree") {
  ChainE empty{2, {}};
  OpTable t = discriminator(2);
  LabeledTree tree = build_tree(t, empty);
  CHECK(tree.depth == 1);
  CHECK(tree.group.order() == 2);
  CHECK(tree.level_size[0] == 8);
  CHECK(tree.level_size[1] == 1);
}

TEST_CASE("node counts for the binary tree over one relation") {
  LabeledTree tree = build_tree(constant_op(3, 2, 0), single_chain3());
  CHECK(tree.level_size[0] == 9);
  CHECK(tree.level_size[1] == 4);
  CHECK(tree.level_size[2] == 1);
}

TEST_CASE("identity endomorphism is found") {
  LabeledTree tree = build_tree(OpTable(3, 1, {1, 0, 2}), single_chain3());
  auto hom = find_hom(tree, tree, HomMode::preserving);
  REQUIRE(hom.has_value());
  for (int level = 0; level <= tree.depth; ++level)
    for (std::uint64_t v = 0; v < tree.level_size[level]; ++v)
      CHECK(hom->map[level][v] >= 0);
}

TEST_CASE("found homomorphisms satisfy the structural conditions") {
  ChainE chain = single_chain3();
  std::mt19937_64 rng(31);
  int found = 0;
  for (int round = 0; round < 40; ++round) {
    // g random; f a projection substitution of g, so a hom must exist
    OpTable g0 = sample_ops(3, 2, 1, rng)[0];
    OpTable f0 = round % 2 == 0 ? g0 : compose(g0, OpVector({projection(3, 2, 1),
                                                             projection(3, 2, 1)}));
    LabeledTree p = build_tree(f0, chain);
    LabeledTree q = build_tree(g0, chain);
    auto hom = find_hom(p, q, HomMode::increasing);
    REQUIRE(hom.has_value());
    ++found;
    // root, successor, equivariance, and leaf comparisons
    CHECK(hom->map[p.depth][0] == 0);
    for (int level = 0; level < p.depth; ++level)
      for (std::uint64_t v = 0; v < p.level_size[level]; ++v)
        CHECK(q.succ[level][hom->map[level][v]] == hom->map[level + 1][p.succ[level][v]]);
    for (int level = 0; level <= p.depth; ++level)
      for (std::uint64_t v = 0; v < p.level_size[level]; ++v)
        for (int g = 0; g < p.group.order(); ++g)
          CHECK(hom->map[level][p.action[level][g][v]] ==
                q.action[level][g][hom->map[level][v]]);
    for (std::uint64_t x = 0; x < p.level_size[0]; ++x)
      CHECK(label_leq(p.leaf_labels[x], q.leaf_labels[hom->map[0][x]]));
  }
  CHECK(found > 0);
}

TEST_CASE("cores are fixpoints without non-surjective endomorphisms") {
  ChainE chain = single_chain3();
  std::mt19937_64 rng(41);
  for (int round = 0; round < 25; ++round) {
    auto fs = sample_ops(3, 1 + (round % 2), 1, rng);
    LabeledTree tree = build_tree(fs[0], chain);
    CoreTrace trace;
    LabeledTree core = core_of(tree, &trace);

    // idempotent node-for-node
    LabeledTree again = core_of(core);
    CHECK(again.present == core.present);

    // homomorphically equivalent to the original
    CHECK(find_hom(tree, core, HomMode::preserving).has_value());
    CHECK(find_hom(core, tree, HomMode::preserving).has_value());

    // two randomized-order runs land on isomorphic cores
    std::mt19937_64 r1(round * 2 + 1), r2(round * 7 + 5);
    LabeledTree c1 = core_of(tree, nullptr, &r1);
    LabeledTree c2 = core_of(tree, nullptr, &r2);
    CHECK(trees_isomorphic(c1, c2));
    CHECK(trees_isomorphic(c1, core));
  }
}

TEST_CASE("the constant-op core collapses symmetric branches") {
  LabeledTree tree = build_tree(constant_op(3, 2, 0), single_chain3());
  LabeledTree core = core_of(tree);
  CHECK(core.node_count() < tree.node_count());
  CHECK(core.node_count() == 11); // pinned by the run
  // already-core trees stay put
  CHECK(core_of(core).present == core.present);
}

TEST_CASE("isomorphism via canonical codes") {
  ChainE chain = single_chain3();
  OpTable f(3, 1, {1, 0, 2});
  LabeledTree p = build_tree(f, chain);
  CHECK(trees_isomorphic(p, p));

  // different label multisets are told apart
  LabeledTree q = build_tree(OpTable(3, 1, {0, 0, 2}), chain);
  CHECK(!trees_isomorphic(p, q));

  // swapping the variables of a binary table gives an isomorphic tree
  OpTable g(3, 2, {0, 1, 2, 2, 0, 1, 1, 2, 0});
  OpTable gswap = compose(g, OpVector({projection(3, 2, 2), projection(3, 2, 1)}));
  CHECK(trees_isomorphic(build_tree(g, chain), build_tree(gswap, chain)));

  // constants of different arities are equivalent (mutual label-increasing
  // homomorphisms between the cores) though their cores need not be
  // isomorphic: core isomorphism is sufficient for equivalence, not necessary
  LabeledTree c1 = core_of(build_tree(constant_op(3, 1, 0), chain));
  LabeledTree c2 = core_of(build_tree(constant_op(3, 2, 0), chain));
  CHECK(find_hom(c1, c2, HomMode::increasing).has_value());
  CHECK(find_hom(c2, c1, HomMode::increasing).has_value());
  CHECK(!trees_isomorphic(c1, c2)); // pinned by the run
}

TEST_CASE("tree isomorphism is an equivalence on sampled trees") {
  ChainE chain = single_chain3();
  std::mt19937_64 rng(59);
  std::vector<LabeledTree> trees;
  for (int i = 0; i < 10; ++i)
    trees.push_back(core_of(build_tree(sample_ops(3, 1, 1, rng)[0], chain)));
  for (const auto& a : trees) {
    CHECK(trees_isomorphic(a, a));
    for (const auto& b : trees) {
      CHECK(trees_isomorphic(a, b) == trees_isomorphic(b, a));
      for (const auto& c : trees)
        if (trees_isomorphic(a, b) && trees_isomorphic(b, c))
          CHECK(trees_isomorphic(a, c));
    }
  }
}

TEST_CASE("tree minors agree with the brute-force oracle on unary pairs") {
  ChainE chain = single_chain3();
  CloneSpec oracle = chain_clone_relational(chain);
  CloneCache cache;
  auto unary = all_ops_of_arity(3, 1);
  for (const OpTable& f : unary)
    for (const OpTable& g : unary) {
      bool tree = minor_via_trees(f, g, chain);
      bool brute = is_minor_decision(f, g, oracle, {}, &cache);
      REQUIRE(tree == brute);
    }
}

TEST_CASE("tree minors agree with the generated oracle at k=2") {
  ChainE empty{2, {}};
  CloneSpec oracle = generated_clone(2, {discriminator(2)});
  CloneCache cache;
  std::vector<OpTable> ops = all_ops_of_arity(2, 1);
  auto bin = all_ops_of_arity(2, 2);
  ops.insert(ops.end(), bin.begin(), bin.end());
  for (const OpTable& f : ops)
    for (const OpTable& g : ops) {
      bool tree = minor_via_trees(f, g, empty);
      bool brute = is_minor_decision(f, g, oracle, {}, &cache);
      REQUIRE(tree == brute);
    }
}

TEST_CASE("class counting through trees matches the oracle") {
  ChainE empty{2, {}};
  auto unary = all_ops_of_arity(2, 1);
  auto tree_part = count_classes_tree(unary, empty);
  auto oracle_part = partition_classes(unary, generated_clone(2, {discriminator(2)}));
  CHECK(tree_part.class_count == oracle_part.class_count);
  for (std::size_t i = 0; i < unary.size(); ++i)
    for (std::size_t j = 0; j < unary.size(); ++j)
      CHECK((tree_part.class_id[i] == tree_part.class_id[j]) ==
            (oracle_part.class_id[i] == oracle_part.class_id[j]));
}

TEST_CASE("label class bound values") {
  CHECK(label_class_bound(single_chain3()) == doctest::Approx(2187.0)); // 3^7
  CHECK(label_class_bound(ChainE{2, {}}) == doctest::Approx(64.0));     // 2^6
}

TEST_CASE("recursive core-type bound") {
  PermGroup triv = PermGroup::trivial(2);
  // depth 0: the labels themselves
  CHECK(core_type_bound_log2(triv, 0, 64.0) == doctest::Approx(6.0));
  // depth 1 over the trivial group: one subgroup, so log2 = |S|
  CHECK(core_type_bound_log2(triv, 1, 64.0) == doctest::Approx(64.0));
  // two subgroups of the symmetric group on two points: log2 at depth 2 is
  // 2^64 + 2^128
  PermGroup s2 = PermGroup::symmetric(2);
  CHECK(core_type_bound_log2(s2, 2, 64.0) ==
        doctest::Approx(std::exp2(64.0) + std::exp2(128.0)));
  CHECK(std::isinf(core_type_bound_log2(s2, 3, 64.0)));
}

TEST_CASE("the 2/3-minority of every small chain is a member") {
  for (int k = 2; k <= 4; ++k) {
    std::vector<ChainE> chains;
    chains.push_back(ChainE{k, {}});
    if (k == 3) {
      chains.push_back(make_chain(3, {{{0, 1}, {2}}}));
    }
    if (k == 4) {
      chains.push_back(make_chain(4, {{{0, 1}, {2}, {3}}}));
      chains.push_back(make_chain(4, {{{0, 1}, {2}, {3}}, {{0, 1}, {2, 3}}}));
    }
    for (const ChainE& chain : chains) {
      OpTable m = minority_from_chain(chain);
      for (element_t x = 0; x < k; ++x)
        for (element_t y = 0; y < k; ++y) {
          CHECK(m(std::vector<element_t>{x, x, y}) == y);
          CHECK(m(std::vector<element_t>{x, y, x}) == x);
          CHECK(m(std::vector<element_t>{x, y, y}) == x);
        }
      CHECK(clone_membership(m, chain_clone(chain)));
      if (chain.relations.empty())
        CHECK(m == discriminator(k));
    }
  }
}
