#include <doctest.h>

#include <random>

#include "fairdiv/ratlp.hpp"
#include "support/oracles.hpp"

using namespace fairdiv;

namespace {

std::vector<Rational> row(std::initializer_list<Rational> values) {
  return values;
}

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("bounded, infeasible and unbounded programs") {
  LinearProgram capped(row({1}));
  capped.add(row({1}), Relation::kLessEqual, 1);
  capped.add(row({1}), Relation::kGreaterEqual, 0);
  const LPOutcome a = solve_max(capped);
  CHECK(a.status == LPStatus::kOptimal);
  CHECK(a.value == 1);
  CHECK(a.point == row({1}));

  LinearProgram empty(row({1}));
  empty.add(row({1}), Relation::kGreaterEqual, 1);
  empty.add(row({1}), Relation::kLessEqual, 0);
  CHECK(solve_max(empty).status == LPStatus::kInfeasible);

  LinearProgram open(row({1}));
  open.add(row({1}), Relation::kGreaterEqual, 0);
  CHECK(solve_max(open).status == LPStatus::kUnbounded);

  CHECK(to_string(LPStatus::kOptimal) == "optimal");
  CHECK(to_string(LPStatus::kInfeasible) == "infeasible");
  CHECK(to_string(LPStatus::kUnbounded) == "unbounded");
}

TEST_CASE("variable bounds") {
  LinearProgram free_var(row({1}));
  free_var.add(row({1}), Relation::kLessEqual, 5);
  CHECK(solve_max(free_var).value == 5);

  LinearProgram below(row({-1}));
  below.add(row({1}), Relation::kGreaterEqual, -2);
  const LPOutcome b = solve_max(below);
  CHECK(b.value == 2);
  CHECK(b.point == row({-2}));

  LinearProgram upper_only(row({1}));
  upper_only.bound(0, std::nullopt, Rational(3));
  CHECK(solve_max(upper_only).value == 3);
  upper_only.objective = row({-1});
  CHECK(solve_max(upper_only).status == LPStatus::kUnbounded);

  LinearProgram boxed(row({1, -1}));
  boxed.bound(0, Rational(-1, 2), Rational(7, 3));
  boxed.bound(1, Rational(-4), Rational(-1));
  const LPOutcome c = solve_max(boxed);
  CHECK(c.value == Rational(19, 3));
  CHECK(c.point == row({Rational(7, 3), -4}));

  LinearProgram unreduced(row({Rational(2, 4)}));
  unreduced.add(row({Rational(3, 3)}), Relation::kLessEqual, Rational(6, 4));
  const LPOutcome u = solve_max(unreduced);
  CHECK(u.value == Rational(3, 4));
  CHECK(u.point == row({Rational(3, 2)}));

  LinearProgram fixed(row({1}));
  fixed.bound(0, Rational(2), Rational(2));
  CHECK(solve_max(fixed).value == 2);
}

TEST_CASE("equality rows, including redundant and conflicting ones") {
  LinearProgram redundant(row({1, 0}));
  redundant.bound(0, Rational(0), std::nullopt);
  redundant.bound(1, Rational(0), std::nullopt);
  redundant.add(row({1, 1}), Relation::kEqual, 1);
  redundant.add(row({2, 2}), Relation::kEqual, 2);
  const LPOutcome r = solve_max(redundant);
  CHECK(r.status == LPStatus::kOptimal);
  CHECK(r.value == 1);

  LinearProgram conflicting(row({1, 0}));
  conflicting.add(row({1, 1}), Relation::kEqual, 1);
  conflicting.add(row({1, 1}), Relation::kEqual, 2);
  CHECK(solve_max(conflicting).status == LPStatus::kInfeasible);

  LinearProgram negative_rhs(row({1, 1}));
  negative_rhs.add(row({-1, 0}), Relation::kGreaterEqual, -3);
  negative_rhs.add(row({0, -1}), Relation::kEqual, -4);
  const LPOutcome n = solve_max(negative_rhs);
  CHECK(n.value == 7);
}

TEST_CASE("degenerate programs terminate") {
  // A classic cycling example for the largest-coefficient rule.
  LinearProgram beale(row({Rational(3, 4), -150, Rational(1, 50), -6}));
  for (int j = 0; j < 4; ++j) beale.bound(j, Rational(0), std::nullopt);
  beale.add(row({Rational(1, 4), -60, Rational(-1, 25), 9}),
            Relation::kLessEqual, 0);
  beale.add(row({Rational(1, 2), -90, Rational(-1, 50), 3}),
            Relation::kLessEqual, 0);
  beale.add(row({0, 0, 1, 0}), Relation::kLessEqual, 1);
  const LPOutcome b = solve_max(beale);
  CHECK(b.status == LPStatus::kOptimal);
  CHECK(b.value == Rational(1, 20));

  LinearProgram pinned(row({1, 1}));
  pinned.bound(0, Rational(0), std::nullopt);
  pinned.bound(1, Rational(0), std::nullopt);
  pinned.add(row({1, 0}), Relation::kLessEqual, 0);
  pinned.add(row({0, 1}), Relation::kLessEqual, 0);
  pinned.add(row({1, 1}), Relation::kLessEqual, 0);
  pinned.add(row({1, -1}), Relation::kEqual, 0);
  const LPOutcome p = solve_max(pinned);
  CHECK(p.status == LPStatus::kOptimal);
  CHECK(p.value == 0);
}

TEST_CASE("malformed programs are rejected") {
  LinearProgram wide(row({1, 1}));
  wide.add(row({1}), Relation::kLessEqual, 1);
  CHECK_THROWS_AS(solve_max(wide), DomainError);
  LinearProgram crossed(row({1}));
  crossed.bound(0, Rational(2), Rational(1));
  CHECK_THROWS_AS(solve_max(crossed), DomainError);
  CHECK_THROWS_AS(crossed.bound(1, Rational(0), Rational(1)), DomainError);
  LinearProgram short_bounds(row({1, 1}));
  short_bounds.lower = {Rational(0)};
  CHECK_THROWS_AS(solve_max(short_bounds), DomainError);
}

TEST_CASE("random boxed programs match vertex enumeration") {
  std::mt19937_64 rng(20240611);
  auto draw = [&](int low, int high) {
    return std::uniform_int_distribution<int>(low, high)(rng);
  };
  int optimal = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int vars = draw(1, 4);
    const int rows = draw(1, 6);
    std::vector<Rational> objective;
    for (int j = 0; j < vars; ++j) objective.emplace_back(draw(-4, 4));
    LinearProgram lp(objective);
    for (int j = 0; j < vars; ++j) {
      const int low = draw(-3, 1);
      const int width = draw(0, 4);
      lp.bound(j, Rational(low), Rational(low) + frac(width, draw(1, 2)));
    }
    for (int r = 0; r < rows; ++r) {
      std::vector<Rational> coefficients;
      for (int j = 0; j < vars; ++j) coefficients.emplace_back(draw(-3, 3));
      const int kind = draw(0, 6);
      const Relation rel = kind < 3   ? Relation::kLessEqual
                           : kind < 6 ? Relation::kGreaterEqual
                                      : Relation::kEqual;
      lp.add(coefficients, rel, frac(draw(-6, 6), draw(1, 3)));
    }
    const LPOutcome got = solve_max(lp);
    const oracle::VertexOptimum want = oracle::best_vertex(lp);
    REQUIRE(got.status != LPStatus::kUnbounded);
    CHECK((got.status == LPStatus::kOptimal) == want.feasible);
    if (got.status == LPStatus::kOptimal && want.feasible) {
      ++optimal;
      CHECK(got.value == want.value);
      CHECK(satisfies(lp, got.point));
    } else {
      ++infeasible;
    }
  }
  CHECK(optimal > 50);
  CHECK(infeasible > 20);
}
