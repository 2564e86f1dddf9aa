#ifndef CLONEKIT_EXPERIMENTS_HPP
#define CLONEKIT_EXPERIMENTS_HPP

#include "clonekit/group_trees.hpp"
#include "clonekit/report.hpp"
#include "clonekit/witnesses.hpp"

namespace clonekit {

struct ExperimentOptions {
  std::uint64_t seed = 0;
  Budgets budgets;
};

// One executed check per maximal-clone row instantiable at k: positive rows
// run their classification mechanism at desk scale, negative rows run the
// witness-family sanity grid plus feasible oracle runs.
ExperimentReport cmd_table1(int k, const ExperimentOptions& opts = {});

// Agreement matrix between the tree decision and the brute-force minor
// search for the chain clone: exhaustive on unary pairs, seeded samples on
// mixed and binary pairs.
ExperimentReport cmd_crosscheck(const ChainE& chain, int max_arity,
                                const ExperimentOptions& opts = {});

// The pairwise intersection cells of the maximal clones in the filter at
// k = 3: positive cells re-verified by their mechanism, negative cells by
// witness-family checks and feasible oracle runs.
ExperimentReport cmd_intersections(int k, const ExperimentOptions& opts = {});

// helpers shared with the CLI and tests
std::vector<OpTable> all_ops_of_arity(int k, int n);
std::vector<OpTable> sample_ops(int k, int n, std::size_t count, std::mt19937_64& rng);

} // namespace clonekit

#endif
