#ifndef FAIRDIV_RATLP_HPP
#define FAIRDIV_RATLP_HPP

#include <optional>
#include <string_view>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::kLessEqual;
  Rational rhs;
};

// maximize objective . x subject to the constraints and per-variable bounds.
// Empty bound vectors mean every variable is free on that side.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  explicit LinearProgram(std::vector<Rational> objective_coefficients = {})
      : objective(std::move(objective_coefficients)) {}

  int variables() const { return static_cast<int>(objective.size()); }

  void add(std::vector<Rational> coefficients, Relation relation,
           Rational rhs) {
    constraints.push_back(
        {std::move(coefficients), relation, std::move(rhs)});
  }
  void bound(int variable, std::optional<Rational> low,
             std::optional<Rational> high);

  // Throws DomainError on ragged rows or inconsistent bounds.
  void validate() const;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

struct LPOutcome {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;               // meaningful when optimal
  std::vector<Rational> point;  // meaningful when optimal
};

// Two-phase dense tableau simplex over exact rationals, Bland's rule. An
// optimal point is re-checked against every constraint and bound before it
// is returned; a failed check throws std::logic_error.
LPOutcome solve_max(const LinearProgram& program);

// True iff `point` satisfies every constraint and bound exactly.
bool satisfies(const LinearProgram& program, const std::vector<Rational>& point);

std::string_view to_string(LPStatus status);

}  // namespace fairdiv

#endif  // FAIRDIV_RATLP_HPP
