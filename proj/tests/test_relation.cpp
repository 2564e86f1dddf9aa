#include <doctest.h>

#include <random>

#include "clonekit/relation.hpp"
#include "clonekit/witnesses.hpp"

using namespace clonekit;

namespace {

// definition-level brute count, independent of make_central_sigma
std::uint64_t sigma_count_oracle(int k, element_t c) {
  const int r = k - 1;
  std::uint64_t count = 0;
  std::vector<element_t> t(r);
  for (std::uint64_t idx = 0; idx < ipow(k, r); ++idx) {
    decode_tuple(idx, k, t);
    bool in = false;
    for (int i = 0; i < r && !in; ++i) {
      if (t[i] == c)
        in = true;
      for (int j = i + 1; j < r && !in; ++j)
        in = t[i] == t[j];
    }
    count += in ? 1 : 0;
  }
  return count;
}

} // namespace

TEST_CASE("preservation") {
  Relation eps = Relation::from_partition(3, {{0, 1}, {2}});
  CHECK(preserves(projection(3, 1, 1), eps));
  OpTable bad(3, 1, {0, 2, 2}); // maps (0,1) in eps to (0,2) outside
  CHECK(!preserves(bad, eps));
  Relation sigma0 = make_central_sigma(3, 0);
  CHECK(preserves(constant_op(3, 1, 0), sigma0));
}

TEST_CASE("central relations") {
  Relation s30 = make_central_sigma(3, 0);
  CHECK(s30.arity() == 2);
  CHECK(s30.count() == 7);
  auto rep = validate_central(s30);
  CHECK(rep.reason == CentralityReport::Reason::ok);
  CHECK(rep.centers == std::vector<element_t>{0});

  // oracle-counted size at k=4: 64 total minus the 6 injective zero-free
  // triples
  CHECK(sigma_count_oracle(4, 0) == 58);
  CHECK(make_central_sigma(4, 0).count() == sigma_count_oracle(4, 0));

  Relation s31 = make_central_sigma(3, 1);
  CHECK(s31.count() == 7);
  CHECK(validate_central(s31).centers == std::vector<element_t>{1});

  CHECK(validate_central(Relation::full(3, 2)).reason == CentralityReport::Reason::trivial);

  // unary central relations are the nonempty proper subsets; every member is
  // a center
  Relation sub = Relation::subset(3, {0, 1});
  auto urep = validate_central(sub);
  CHECK(urep.reason == CentralityReport::Reason::ok);
  CHECK(urep.centers == std::vector<element_t>{0, 1});

  CHECK_THROWS_AS(make_central_sigma(2, 0), structural_error);
}

TEST_CASE("central validation for k in 3..5") {
  for (int k = 3; k <= 5; ++k)
    for (int c = 0; c < k; ++c) {
      Relation s = make_central_sigma(k, static_cast<element_t>(c));
      auto rep = validate_central(s);
      CHECK(rep.reason == CentralityReport::Reason::ok);
      CHECK(rep.centers == std::vector<element_t>{static_cast<element_t>(c)});
      CHECK(s.count() == sigma_count_oracle(k, static_cast<element_t>(c)));
    }
}

TEST_CASE("h-regular relations") {
  // T = {equality} on k=3 gives iota_3 with 27 - 6 tuples
  HRegularFamily fam{3, 3, {Relation::equality(3)}};
  CHECK(validate_h_regular(fam));
  Relation iota = make_h_regular(fam);
  CHECK(iota.arity() == 3);
  CHECK(iota.count() == 21);
  CHECK(totally_reflexive(iota));
  CHECK(totally_symmetric(iota));

  // a 3-block equivalence on k=4: lambda versus a definition-level oracle
  Relation theta = Relation::from_partition(4, {{0, 1}, {2}, {3}});
  HRegularFamily fam4{4, 3, {theta}};
  CHECK(validate_h_regular(fam4));
  Relation lam = make_h_regular(fam4);
  auto bi = theta.block_index();
  std::vector<element_t> t(3);
  for (std::uint64_t idx = 0; idx < ipow(4, 3); ++idx) {
    decode_tuple(idx, 4, t);
    bool transversal = bi[t[0]] != bi[t[1]] && bi[t[0]] != bi[t[2]] && bi[t[1]] != bi[t[2]];
    CHECK(lam.contains_index(idx) == !transversal);
  }
  CHECK(totally_reflexive(lam));
  CHECK(totally_symmetric(lam));

  // invalid: two blocks only
  HRegularFamily bad{3, 2, {Relation::from_partition(3, {{0, 1}, {2}})}};
  CHECK(!validate_h_regular(bad));
}

TEST_CASE("h-regular outputs stay reflexive and symmetric over small families") {
  for (int k = 3; k <= 4; ++k) {
    // all single equivalences with exactly 3 blocks
    std::vector<Relation> eqs;
    if (k == 3) {
      eqs.push_back(Relation::equality(3));
    } else {
      eqs.push_back(Relation::from_partition(4, {{0, 1}, {2}, {3}}));
      eqs.push_back(Relation::from_partition(4, {{0, 2}, {1}, {3}}));
      eqs.push_back(Relation::from_partition(4, {{0, 3}, {1}, {2}}));
      eqs.push_back(Relation::from_partition(4, {{0}, {1, 2}, {3}}));
      eqs.push_back(Relation::from_partition(4, {{0}, {1, 3}, {2}}));
      eqs.push_back(Relation::from_partition(4, {{0}, {1}, {2, 3}}));
    }
    for (const Relation& th : eqs) {
      HRegularFamily fam{k, 3, {th}};
      REQUIRE(validate_h_regular(fam));
      Relation lam = make_h_regular(fam);
      CHECK(totally_reflexive(lam));
      CHECK(totally_symmetric(lam));
    }
  }
}

TEST_CASE("prime affine relations") {
  // k=2: the xor group
  Relation beta2 = make_prime_affine(2, {{0, 1}, {1, 0}});
  CHECK(beta2.arity() == 4);
  CHECK(beta2.count() == 8);
  // (0,0,0,w) forces w = 0
  CHECK(beta2.contains(std::vector<element_t>{0, 0, 0, 0}));
  CHECK(!beta2.contains(std::vector<element_t>{0, 0, 0, 1}));

  Relation beta3 = make_prime_affine(3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  CHECK(beta3.count() == 27);

  // Z_4 is not elementary abelian
  std::vector<std::vector<element_t>> z4(4, std::vector<element_t>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      z4[a][b] = static_cast<element_t>((a + b) % 4);
  CHECK_THROWS_AS(make_prime_affine(4, z4), structural_error);
  // not a group at all
  CHECK_THROWS_AS(make_prime_affine(2, {{0, 0}, {0, 0}}), structural_error);
}

TEST_CASE("bounded orders and prime permutations") {
  Relation order = Relation::from_tuples(2, 2, {{0, 0}, {0, 1}, {1, 1}});
  element_t lo = 9, hi = 9;
  CHECK(is_bounded_order(order, &lo, &hi));
  CHECK(lo == 0);
  CHECK(hi == 1);
  CHECK(!is_bounded_order(Relation::from_tuples(3, 2, {{0, 0}, {1, 1}, {2, 2}}), nullptr, nullptr));

  CHECK(is_prime_permutation(OpTable(3, 1, {1, 2, 0})));
  CHECK(is_prime_permutation(OpTable(4, 1, {1, 0, 3, 2})));
  CHECK(!is_prime_permutation(OpTable(3, 1, {0, 2, 1}))); // fixed point
  CHECK(!is_prime_permutation(OpTable(4, 1, {1, 2, 3, 0}))); // 4-cycle
}

TEST_CASE("chains") {
  CHECK(is_chain({Relation::from_partition(3, {{0, 1}, {2}})}));
  CHECK(!is_chain({Relation::from_partition(3, {{0, 1}, {2}}),
                   Relation::from_partition(3, {{0}, {1, 2}})}));
  CHECK(is_chain({Relation::from_partition(4, {{0, 1}, {2}, {3}}),
                  Relation::from_partition(4, {{0, 1}, {2, 3}})}));

  CHECK_THROWS_AS(make_chain(3, {{{0, 1}, {2}}, {{0}, {1, 2}}}), structural_error);
  CHECK_THROWS_AS(make_chain(3, {{{0}, {1}, {2}}}), structural_error); // equality
  CHECK_THROWS_AS(make_chain(3, {{{0, 1, 2}}}), structural_error);    // full

  ChainE chain = make_chain(4, {{{0, 1}, {2}, {3}}, {{0, 1}, {2, 3}}});
  CHECK(chain_level(chain, 0, 0) == 0);
  CHECK(chain_level(chain, 0, 1) == 1);
  CHECK(chain_level(chain, 2, 3) == 2);
  CHECK(chain_level(chain, 0, 2) == 3);
}

TEST_CASE("chain automorphisms") {
  // E empty: the full symmetric group
  CHECK(aut_of_chain(ChainE{3, {}}).order() == 6);

  // the two-relation chain on four elements: the group generated by the
  // transpositions (0 1) and (2 3), order 4
  ChainE chain = make_chain(4, {{{0}, {1}, {2, 3}}, {{0, 1}, {2, 3}}});
  PermGroup aut = aut_of_chain(chain);
  CHECK(aut.order() == 4);
  CHECK(aut.index_of(std::vector<element_t>{1, 0, 2, 3}) >= 0);
  CHECK(aut.index_of(std::vector<element_t>{0, 1, 3, 2}) >= 0);
  CHECK(aut.index_of(std::vector<element_t>{1, 0, 3, 2}) >= 0);

  // single relation {01|2} on k=3: {id, (0 1)}
  PermGroup aut3 = aut_of_chain(make_chain(3, {{{0, 1}, {2}}}));
  CHECK(aut3.order() == 2);
  CHECK(aut3.index_of(std::vector<element_t>{1, 0, 2}) == 1);

  // every returned permutation preserves every member, excluded ones do not
  ChainE c3 = make_chain(3, {{{0, 1}, {2}}});
  PermGroup sym = PermGroup::symmetric(3);
  for (int g = 0; g < sym.order(); ++g) {
    OpTable p(3, 1, sym.perm(g));
    bool preserves_all = preserves(p, c3.relations[0]);
    CHECK(preserves_all == (aut3.index_of(sym.perm(g)) >= 0));
  }
}

TEST_CASE("orbit and stabilizer") {
  PermGroup sym = PermGroup::symmetric(3);
  auto po = orbit_and_stabilizer(sym, std::vector<element_t>{0, 0});
  CHECK(po.orbit.size() == 3); // the diagonal
  CHECK(std::popcount(po.stabilizer_mask) == 2);

  PermGroup triv = PermGroup::trivial(3);
  auto po2 = orbit_and_stabilizer(triv, std::vector<element_t>{1, 2});
  CHECK(po2.orbit.size() == 1);
  CHECK(po2.stabilizer_mask == 1);

  // the order-4 chain group acting on a single coordinate
  ChainE chain = make_chain(4, {{{0}, {1}, {2, 3}}, {{0, 1}, {2, 3}}});
  PermGroup aut = aut_of_chain(chain);
  auto po3 = orbit_and_stabilizer(aut, std::vector<element_t>{0});
  CHECK(po3.orbit == std::vector<std::uint64_t>{0, 1});
  CHECK(std::popcount(po3.stabilizer_mask) == 2);
}
