#include <doctest.h>

#include <random>

#include "clonekit/op_table.hpp"
#include "clonekit/relation.hpp"

using namespace clonekit;

TEST_CASE("tuple encoding is big-endian mixed radix") {
  CHECK(encode_tuple(std::vector<element_t>{1, 2}, 3) == 5);
  CHECK(encode_tuple(std::vector<element_t>{0, 0, 0}, 3) == 0);
  CHECK(encode_tuple(std::vector<element_t>{1, 0, 1}, 2) == 5);
  CHECK_THROWS_AS(encode_tuple(std::vector<element_t>{3}, 3), structural_error);
  CHECK_THROWS_AS(encode_tuple(std::vector<element_t>{}, 3), structural_error);
}

TEST_CASE("encode/decode are mutually inverse") {
  for (int k = 2; k <= 4; ++k)
    for (int n = 1; n <= 6; ++n) {
      std::uint64_t sz = ipow(k, n);
      for (std::uint64_t idx = 0; idx < sz; ++idx) {
        auto t = decode_tuple(idx, k, n);
        CHECK(encode_tuple(t, k) == idx);
      }
    }
}

TEST_CASE("projections") {
  OpTable p = projection(2, 1, 1);
  CHECK(p.table == std::vector<element_t>{0, 1});

  OpTable q = projection(3, 2, 2);
  for (element_t a = 0; a < 3; ++a)
    for (element_t b = 0; b < 3; ++b)
      CHECK(q(std::vector<element_t>{a, b}) == b);

  OpTable r = projection(2, 3, 3);
  CHECK(r(std::vector<element_t>{1, 0, 1}) == 1);
  CHECK_THROWS_AS(projection(2, 2, 3), structural_error);
}

TEST_CASE("composition") {
  // projection identity: p_1 o (f, h) = f
  OpTable f(2, 2, {0, 1, 1, 0}); // xor
  OpTable h(2, 2, {0, 0, 0, 1}); // and
  OpTable p1 = projection(2, 2, 1);
  CHECK(compose(p1, OpVector({f, h})) == f);

  // the discriminator collapses to a projection under t(x, x, z) = z
  OpTable neg(2, 1, {1, 0});
  CHECK(compose(neg, OpVector({neg})) == projection(2, 1, 1));

  CHECK_THROWS_AS(compose(f, OpVector({h})), structural_error);
}

TEST_CASE("compose with all projections is the identity substitution") {
  for (int k = 2; k <= 3; ++k)
    for (int n = 1; n <= 2; ++n) {
      std::uint64_t sz = ipow(k, n);
      std::uint64_t total = ipow(k, sz);
      std::vector<OpTable> projections_vec;
      for (int i = 1; i <= n; ++i)
        projections_vec.push_back(projection(k, n, i));
      OpVector ps(projections_vec);
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<element_t> t(sz);
        std::uint64_t rest = code;
        for (std::uint64_t x = 0; x < sz; ++x) {
          t[x] = static_cast<element_t>(rest % k);
          rest /= k;
        }
        OpTable g(k, n, std::move(t));
        CHECK(compose(g, ps) == g);
      }
    }
}

TEST_CASE("composition is associative in the clone sense") {
  std::mt19937_64 rng(7);
  const int k = 3;
  auto random_op = [&](int arity) {
    std::vector<element_t> t(ipow(k, arity));
    for (auto& v : t)
      v = static_cast<element_t>(rng() % k);
    return OpTable(k, arity, std::move(t));
  };
  for (int round = 0; round < 50; ++round) {
    OpTable g = random_op(2);
    OpTable h1 = random_op(2), h2 = random_op(2);
    OpTable u1 = random_op(1), u2 = random_op(1);
    OpVector us({u1, u2});
    // g o (h1 o us, h2 o us) == (g o (h1,h2)) o us
    OpTable left = compose(g, OpVector({compose(h1, us), compose(h2, us)}));
    OpTable right = compose(compose(g, OpVector({h1, h2})), us);
    CHECK(left == right);
  }
}

TEST_CASE("range queries") {
  CHECK(range_of(constant_op(3, 1, 0)) == std::vector<element_t>{0});
  CHECK(range_of(projection(3, 1, 1)) == std::vector<element_t>{0, 1, 2});
  OpTable andop(2, 2, {0, 0, 0, 1});
  CHECK(range_of(andop) == std::vector<element_t>{0, 1});
}

TEST_CASE("range of a composite is inside the outer range") {
  std::mt19937_64 rng(11);
  const int k = 3;
  for (int round = 0; round < 60; ++round) {
    std::vector<element_t> gt(9), h1t(9), h2t(9);
    for (auto* t : {&gt, &h1t, &h2t})
      for (auto& v : *t)
        v = static_cast<element_t>(rng() % k);
    OpTable g(k, 2, gt), h1(k, 2, h1t), h2(k, 2, h2t);
    auto sub = range_of(compose(g, OpVector({h1, h2})));
    auto sup = range_of(g);
    CHECK(std::includes(sup.begin(), sup.end(), sub.begin(), sub.end()));
  }
}

TEST_CASE("essential arity") {
  CHECK(essential_arity(projection(2, 3, 1)) == 1);
  CHECK(essential_arity(constant_op(3, 2, 1)) == 0);
  OpTable xorop(2, 2, {0, 1, 1, 0});
  CHECK(essential_arity(xorop) == 2);
  CHECK(depends_on(xorop, 1));
  CHECK(depends_on(xorop, 2));
  CHECK_THROWS_AS(depends_on(xorop, 3), structural_error);
}

TEST_CASE("quotient operations") {
  // equality: relabeling-free copy
  OpTable maxop(3, 2, {0, 1, 2, 1, 1, 2, 2, 2, 2});
  CHECK(quotient_op(maxop, Relation::equality(3)) == maxop);

  // full relation: constant on a one-element set
  OpTable q = quotient_op(maxop, Relation::all_pairs(3));
  CHECK(q.k == 1);
  CHECK(q.table == std::vector<element_t>(1, 0));

  // blocks {0,1},{2}: max collapses to binary max on two elements
  Relation theta = Relation::from_partition(3, {{0, 1}, {2}});
  OpTable qq = quotient_op(maxop, theta);
  CHECK(qq.k == 2);
  CHECK(qq.table == std::vector<element_t>{0, 1, 1, 1});

  // a table that does not preserve theta is rejected
  OpTable bad(3, 1, {0, 2, 2});
  CHECK_THROWS_AS(quotient_op(bad, theta), structural_error);
}

TEST_CASE("quotient commutes with composition") {
  Relation theta = Relation::from_partition(3, {{0, 1}, {2}});
  std::mt19937_64 rng(3);
  int tested = 0;
  while (tested < 40) {
    std::vector<element_t> gt(9), h1t(9), h2t(9);
    for (auto* t : {&gt, &h1t, &h2t})
      for (auto& v : *t)
        v = static_cast<element_t>(rng() % 3);
    OpTable g(3, 2, gt), h1(3, 2, h1t), h2(3, 2, h2t);
    if (!preserves(g, theta) || !preserves(h1, theta) || !preserves(h2, theta))
      continue;
    ++tested;
    OpTable lhs = quotient_op(compose(g, OpVector({h1, h2})), theta);
    OpTable rhs = compose(quotient_op(g, theta),
                          OpVector({quotient_op(h1, theta), quotient_op(h2, theta)}));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("op table validation") {
  CHECK_THROWS_AS(OpTable(3, 2, std::vector<element_t>{0, 1}), structural_error);
  CHECK_THROWS_AS(OpTable(2, 1, std::vector<element_t>{0, 2}), structural_error);
  CHECK_THROWS_AS(OpTable(2, 0, std::vector<element_t>{0}), structural_error);
  CHECK_THROWS_AS(OpTable(13, 1, std::vector<element_t>(13, 0)), structural_error);
}
