#include <doctest.h>

#include "clonekit/experiments.hpp"
#include "clonekit/io.hpp"

using namespace clonekit;

TEST_CASE("table1 at k=3 runs every instantiable row") {
  ExperimentOptions opts;
  ExperimentReport rep = cmd_table1(3, opts);
  CHECK(rep.failures() == 0);
  // the two rows not instantiable at k=3 are skipped with a reason
  CHECK(rep.skips() == 2);
  for (const CheckResult& c : rep.checks)
    if (c.status == CheckResult::Status::skip)
      CHECK(!c.reason.empty());
  // reports are reproducible at a fixed seed
  CHECK(report_digest(rep) == report_digest(cmd_table1(3, opts)));
}

TEST_CASE("crosscheck agrees on the single-relation chain") {
  ExperimentOptions opts;
  ChainE chain = make_chain(3, {{{0, 1}, {2}}});
  ExperimentReport rep = cmd_crosscheck(chain, 2, opts);
  CHECK(rep.failures() == 0);
}

TEST_CASE("crosscheck agrees on the empty chain at k=2") {
  ExperimentOptions opts;
  ExperimentReport rep = cmd_crosscheck(ChainE{2, {}}, 2, opts);
  CHECK(rep.failures() == 0);
}

TEST_CASE("intersections at k=3 pass with one documented skip") {
  ExperimentOptions opts;
  ExperimentReport rep = cmd_intersections(3, opts);
  CHECK(rep.failures() == 0);
  CHECK(rep.skips() == 1);
  CHECK(rep.exit_code() == 3);
  CHECK(report_digest(rep) == report_digest(cmd_intersections(3, opts)));
}
