#include <doctest.h>

#include "clonekit/clone_spec.hpp"
#include "clonekit/witnesses.hpp"

using namespace clonekit;

TEST_CASE("projections belong to every spec") {
  std::vector<CloneSpec> specs = {
      full_clone(3),
      projections_clone(3),
      slupecki_clone(3, 2),
      discriminator_clone(3),
      chain_clone(make_chain(3, {{{0, 1}, {2}}})),
      pol_of(3, {make_central_sigma(3, 0)}),
      generated_clone(3, {discriminator(3)}),
  };
  for (const auto& spec : specs)
    for (int i = 1; i <= 2; ++i)
      CHECK(clone_membership(projection(3, 2, i), spec));
}

TEST_CASE("slupecki chain levels") {
  // a binary op with full range depending on both variables is outside B_{k-1}
  OpTable maxop(3, 2, {0, 1, 2, 1, 1, 2, 2, 2, 2});
  CHECK(essential_arity(maxop) == 2);
  CHECK(range_of(maxop).size() == 3);
  CHECK(!clone_membership(maxop, slupecki_clone(3, 2)));
  CHECK(clone_membership(maxop, slupecki_clone(3, 3))); // B_k = O_A

  // 2-element range: inside B_2
  OpTable small(3, 2, {0, 1, 1, 1, 1, 1, 1, 1, 0});
  CHECK(clone_membership(small, slupecki_clone(3, 2)));
  // essentially unary: inside every level
  CHECK(clone_membership(unary_as_nary(OpTable(3, 1, {2, 0, 1}), 2, 1), slupecki_clone(3, 0)));
}

TEST_CASE("Burle membership is quasilinearity") {
  // h1 = h2 = (0,1,0), g = (0,1): f(x,y) = g(h1(x) xor h2(y))
  std::vector<element_t> t(9);
  auto h = [](element_t v) { return v == 1 ? 1 : 0; };
  for (element_t a = 0; a < 3; ++a)
    for (element_t b = 0; b < 3; ++b)
      t[a * 3 + b] = static_cast<element_t>(h(a) ^ h(b));
  OpTable quasi(3, 2, t);
  CHECK(is_quasilinear(quasi));
  CHECK(clone_membership(quasi, slupecki_clone(3, 1)));

  OpTable xor3(3, 2, {0, 1, 0, 1, 0, 0, 0, 0, 0});
  CHECK(!is_quasilinear(xor3));
  OpTable maxb(2, 2, {0, 1, 1, 1});
  CHECK(!is_quasilinear(maxb)); // binary or is not linear
}

TEST_CASE("ta_minus and B_i(M)") {
  CloneSpec tam = NamedSpec{NamedTag::ta_minus, 3};
  CHECK(clone_membership(projection(3, 2, 1), tam));
  CHECK(clone_membership(unary_as_nary(OpTable(3, 1, {0, 0, 1}), 2, 2), tam));
  CHECK(!clone_membership(unary_as_nary(OpTable(3, 1, {1, 2, 0}), 2, 1), tam)); // 3-cycle
  OpTable maxop(3, 2, {0, 1, 2, 1, 1, 2, 2, 2, 2});
  CHECK(!clone_membership(maxop, tam));

  // B_{k-1}(T_A^-): projections plus nonsurjective operations
  CloneSpec nspec = slupecki_clone_m(3, 2, ta_minus_monoid(3));
  CHECK(clone_membership(projection(3, 2, 2), nspec));
  OpTable small(3, 2, {0, 1, 1, 1, 1, 1, 1, 1, 0});
  CHECK(clone_membership(small, nspec));
  CHECK(!clone_membership(maxop, nspec));                                         // surjective
  CHECK(!clone_membership(unary_as_nary(OpTable(3, 1, {1, 2, 0}), 2, 1), nspec)); // 3-cycle
}

TEST_CASE("discriminator clone membership") {
  OpTable t = discriminator(2);
  CHECK(clone_membership(t, discriminator_clone(2)));
  CHECK(clone_membership(t, chain_clone(ChainE{2, {}})));
  OpTable andop(2, 2, {0, 0, 0, 1});
  CHECK(!clone_membership(andop, discriminator_clone(2)));

  // the discriminator is conservative, so it preserves every subset
  for (int k = 2; k <= 4; ++k) {
    OpTable tk = discriminator(k);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      std::vector<element_t> s;
      for (int a = 0; a < k; ++a)
        if (mask & (1u << a))
          s.push_back(static_cast<element_t>(a));
      CHECK(preserves(tk, Relation::subset(k, s)));
    }
  }
}

TEST_CASE("the discriminator is not monotone") {
  Relation leq = Relation::from_tuples(2, 2, {{0, 0}, {0, 1}, {1, 1}});
  CHECK(!clone_membership(discriminator(2), pol_of(2, {leq})));
  CHECK(!preserves(discriminator(2), leq)); // t(0,0,1)=1 but t(0,1,1)=0
}

TEST_CASE("generated membership delegates to closure") {
  // <t_A> on two elements: binary part is the projections
  CloneSpec gen = generated_clone(2, {discriminator(2)});
  CHECK(clone_membership(projection(2, 2, 1), gen));
  OpTable xorop(2, 2, {0, 1, 1, 0});
  CHECK(!clone_membership(xorop, gen));
  CHECK(clone_membership(discriminator(2), gen));
}

TEST_CASE("spec keys separate distinct specs") {
  CHECK(spec_key(full_clone(3)) != spec_key(projections_clone(3)));
  CHECK(spec_key(slupecki_clone(3, 1)) != spec_key(slupecki_clone(3, 2)));
  CHECK(spec_key(pol_of(3, {make_central_sigma(3, 0)})) !=
        spec_key(pol_of(3, {make_central_sigma(3, 1)})));
  CHECK(spec_key(full_clone(3)) == spec_key(full_clone(3)));
}

TEST_CASE("monoid closure") {
  auto closure = monoid_closure(3, {OpTable(3, 1, {1, 2, 0})});
  CHECK(closure.size() == 3); // the cyclic group of order 3
  auto tam = ta_minus_monoid(3);
  CHECK(tam.size() == 27 - 6 + 1); // nonpermutations plus the identity
}
