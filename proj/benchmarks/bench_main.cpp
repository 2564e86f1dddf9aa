#include <benchmark/benchmark.h>

#include <random>

#include "clonekit/experiments.hpp"
#include "clonekit/group_trees.hpp"
#include "clonekit/witnesses.hpp"

using namespace clonekit;

namespace {

OpTable random_op(int k, int n, std::mt19937_64& rng) {
  std::vector<element_t> t(ipow(k, n));
  for (auto& v : t)
    v = static_cast<element_t>(rng() % k);
  return OpTable(k, n, std::move(t));
}

void bm_preserves(benchmark::State& state) {
  Relation sigma = make_central_sigma(3, 0);
  std::mt19937_64 rng(1);
  OpTable f = random_op(3, 2, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(preserves(f, sigma));
}
BENCHMARK(bm_preserves);

void bm_enum_monotone(benchmark::State& state) {
  Relation leq = Relation::from_tuples(2, 2, {{0, 0}, {0, 1}, {1, 1}});
  CloneSpec spec = pol_of(2, {leq});
  for (auto _ : state)
    benchmark::DoNotOptimize(enum_clone_ops(spec, static_cast<int>(state.range(0))));
}
BENCHMARK(bm_enum_monotone)->Arg(2)->Arg(3)->Arg(4);

void bm_minor_search(benchmark::State& state) {
  CloneSpec spec = pol_of(3, {make_central_sigma(3, 0)}, {}, {{0}});
  std::mt19937_64 rng(2);
  OpTable f = random_op(3, 2, rng);
  OpTable g = random_op(3, 2, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(is_minor(f, g, spec).has_value());
}
BENCHMARK(bm_minor_search);

void bm_build_tree(benchmark::State& state) {
  ChainE chain = make_chain(3, {{{0, 1}, {2}}});
  std::mt19937_64 rng(3);
  OpTable f = random_op(3, 2, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(build_tree(f, chain).node_count());
}
BENCHMARK(bm_build_tree);

void bm_core(benchmark::State& state) {
  ChainE chain = make_chain(3, {{{0, 1}, {2}}});
  std::mt19937_64 rng(4);
  OpTable f = random_op(3, 2, rng);
  LabeledTree tree = build_tree(f, chain);
  for (auto _ : state)
    benchmark::DoNotOptimize(core_of(tree).node_count());
}
BENCHMARK(bm_core);

void bm_canonical_code(benchmark::State& state) {
  ChainE chain = make_chain(3, {{{0, 1}, {2}}});
  std::mt19937_64 rng(5);
  LabeledTree tree = build_tree(random_op(3, 2, rng), chain);
  for (auto _ : state)
    benchmark::DoNotOptimize(canonical_code(tree));
}
BENCHMARK(bm_canonical_code);

void bm_minor_via_trees(benchmark::State& state) {
  ChainE chain = make_chain(3, {{{0, 1}, {2}}});
  std::mt19937_64 rng(6);
  OpTable f = random_op(3, 2, rng);
  OpTable g = random_op(3, 2, rng);
  for (auto _ : state)
    benchmark::DoNotOptimize(minor_via_trees(f, g, chain));
}
BENCHMARK(bm_minor_via_trees);

} // namespace

BENCHMARK_MAIN();
