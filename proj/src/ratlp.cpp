#include "fairdiv/ratlp.hpp"

#include <stdexcept>
#include <string>

#include "fairdiv/errors.hpp"

namespace fairdiv {

void LinearProgram::bound(int variable, std::optional<Rational> low,
                          std::optional<Rational> high) {
  if (variable < 0 || variable >= variables()) {
    throw DomainError("bound on unknown variable " + std::to_string(variable));
  }
  lower.resize(objective.size());
  upper.resize(objective.size());
  lower[variable] = std::move(low);
  upper[variable] = std::move(high);
}

void LinearProgram::validate() const {
  const std::size_t width = objective.size();
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    if (constraints[r].coefficients.size() != width) {
      throw DomainError("constraint " + std::to_string(r) + " has " +
                        std::to_string(constraints[r].coefficients.size()) +
                        " coefficients, expected " + std::to_string(width));
    }
  }
  if ((!lower.empty() && lower.size() != width) ||
      (!upper.empty() && upper.size() != width)) {
    throw DomainError("bound vectors do not match the variable count");
  }
  for (std::size_t j = 0; j < lower.size() && j < upper.size(); ++j) {
    if (lower[j] && upper[j] && *lower[j] > *upper[j]) {
      throw DomainError("variable " + std::to_string(j) +
                        " has lower bound above upper bound");
    }
  }
}

bool satisfies(const LinearProgram& program,
               const std::vector<Rational>& point) {
  if (static_cast<int>(point.size()) != program.variables()) return false;
  for (const auto& c : program.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < point.size(); ++j) {
      if (sgn(c.coefficients[j]) != 0) lhs += c.coefficients[j] * point[j];
    }
    switch (c.relation) {
      case Relation::kLessEqual:
        if (lhs > c.rhs) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < c.rhs) return false;
        break;
      case Relation::kEqual:
        if (lhs != c.rhs) return false;
        break;
    }
  }
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (j < program.lower.size() && program.lower[j] &&
        point[j] < *program.lower[j]) {
      return false;
    }
    if (j < program.upper.size() && program.upper[j] &&
        point[j] > *program.upper[j]) {
      return false;
    }
  }
  return true;
}

namespace {

// x_j = offset + sum(sign * y_col) with every y >= 0.
struct Substitution {
  Rational offset;
  std::vector<std::pair<int, int>> columns;  // (column, +1/-1)
};

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> rows, std::vector<int> basis,
          int columns)
      : rows_(std::move(rows)), basis_(std::move(basis)), columns_(columns) {
    banned_.assign(static_cast<std::size_t>(columns_), false);
  }

  int rhs() const { return columns_; }

  // z[c] = c_B . column_c - cost_c; z[rhs] = current objective value.
  void set_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    z_.assign(static_cast<std::size_t>(columns_) + 1, Rational(0));
    for (int c = 0; c < columns_; ++c) z_[c] = -cost[c];
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (int c = 0; c <= columns_; ++c) {
        if (sgn(rows_[r][c]) != 0) z_[c] += cb * rows_[r][c];
      }
    }
  }

  // Returns false if the objective is unbounded.
  bool optimize() {
    while (true) {
      int entering = -1;
      for (int c = 0; c < columns_; ++c) {
        if (!banned_[c] && sgn(z_[c]) < 0) {
          entering = c;
          break;
        }
      }
      if (entering < 0) return true;
      int leaving = -1;
      Rational best;
      for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Rational& a = rows_[r][entering];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[r][rhs()] / a;
        if (leaving < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[leaving])) {
          leaving = static_cast<int>(r);
          best = std::move(ratio);
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(int r, int c) {
    auto& prow = rows_[r];
    const Rational inv = 1 / prow[c];
    std::vector<int> support;
    for (int j = 0; j <= columns_; ++j) {
      if (sgn(prow[j]) != 0) {
        prow[j] *= inv;
        support.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (sgn(row[c]) == 0) return;
      const Rational factor = row[c];
      for (const int j : support) row[j] -= factor * prow[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) != r) eliminate(rows_[i]);
    }
    eliminate(z_);
    basis_[r] = c;
  }

  // After phase one: pivot zero-valued artificial columns out of the basis,
  // dropping rows that are linear combinations of the others.
  void expel(int first_artificial) {
    for (std::size_t r = 0; r < rows_.size();) {
      if (basis_[r] < first_artificial) {
        ++r;
        continue;
      }
      int column = -1;
      for (int c = 0; c < first_artificial; ++c) {
        if (sgn(rows_[r][c]) != 0) {
          column = c;
          break;
        }
      }
      if (column >= 0) {
        pivot(static_cast<int>(r), column);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
      }
    }
    for (int c = first_artificial; c < columns_; ++c) banned_[c] = true;
  }

  const Rational& value() const { return z_[columns_]; }

  std::vector<Rational> solution() const {
    std::vector<Rational> y(static_cast<std::size_t>(columns_), Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      y[basis_[r]] = rows_[r][columns_];
    }
    return y;
  }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> basis_;
  int columns_;
  std::vector<bool> banned_;
  std::vector<Rational> cost_;
  std::vector<Rational> z_;
};

}  // namespace

namespace {

// GMP arithmetic assumes reduced operands.
LinearProgram canonical(LinearProgram program) {
  for (auto& c : program.objective) c.canonicalize();
  for (auto& row : program.constraints) {
    for (auto& c : row.coefficients) c.canonicalize();
    row.rhs.canonicalize();
  }
  for (auto* bounds : {&program.lower, &program.upper}) {
    for (auto& b : *bounds) {
      if (b) b->canonicalize();
    }
  }
  return program;
}

}  // namespace

LPOutcome solve_max(const LinearProgram& input) {
  input.validate();
  const LinearProgram program = canonical(input);
  const int n = program.variables();

  // Shift and split variables so that every column is non-negative.
  std::vector<Substitution> subs(static_cast<std::size_t>(n));
  int structural = 0;
  struct UpperRow {
    int column;
    Rational limit;
  };
  std::vector<UpperRow> upper_rows;
  for (int j = 0; j < n; ++j) {
    const auto* low = j < static_cast<int>(program.lower.size()) &&
                              program.lower[j]
                          ? &*program.lower[j]
                          : nullptr;
    const auto* high = j < static_cast<int>(program.upper.size()) &&
                               program.upper[j]
                           ? &*program.upper[j]
                           : nullptr;
    if (low != nullptr) {
      subs[j].offset = *low;
      subs[j].columns.emplace_back(structural, 1);
      if (high != nullptr) upper_rows.push_back({structural, *high - *low});
      ++structural;
    } else if (high != nullptr) {
      subs[j].offset = *high;
      subs[j].columns.emplace_back(structural++, -1);
    } else {
      subs[j].offset = 0;
      subs[j].columns.emplace_back(structural++, 1);
      subs[j].columns.emplace_back(structural++, -1);
    }
  }

  struct Row {
    std::vector<Rational> a;
    Relation relation;
    Rational b;
  };
  std::vector<Row> rows;
  for (const auto& c : program.constraints) {
    Row row{std::vector<Rational>(static_cast<std::size_t>(structural)),
            c.relation, c.rhs};
    for (int j = 0; j < n; ++j) {
      const Rational& a = c.coefficients[j];
      if (sgn(a) == 0) continue;
      row.b -= a * subs[j].offset;
      for (const auto& [col, sign] : subs[j].columns) {
        row.a[col] += sign > 0 ? a : Rational(-a);
      }
    }
    rows.push_back(std::move(row));
  }
  for (const auto& u : upper_rows) {
    Row row{std::vector<Rational>(static_cast<std::size_t>(structural)),
            Relation::kLessEqual, u.limit};
    row.a[u.column] = 1;
    rows.push_back(std::move(row));
  }
  for (auto& row : rows) {
    if (sgn(row.b) < 0) {
      for (auto& a : row.a) a = -a;
      row.b = -row.b;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }

  // Column layout: structural | slack/surplus | artificial.
  int slacks = 0;
  int artificials = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++slacks;
    if (row.relation != Relation::kLessEqual) ++artificials;
  }
  const int first_slack = structural;
  const int first_artificial = structural + slacks;
  const int columns = first_artificial + artificials;

  std::vector<std::vector<Rational>> table;
  std::vector<int> basis;
  int next_slack = first_slack;
  int next_artificial = first_artificial;
  for (auto& row : rows) {
    std::vector<Rational> t(static_cast<std::size_t>(columns) + 1);
    for (int c = 0; c < structural; ++c) t[c] = row.a[c];
    t[columns] = row.b;
    switch (row.relation) {
      case Relation::kLessEqual:
        t[next_slack] = 1;
        basis.push_back(next_slack++);
        break;
      case Relation::kGreaterEqual:
        t[next_slack++] = -1;
        t[next_artificial] = 1;
        basis.push_back(next_artificial++);
        break;
      case Relation::kEqual:
        t[next_artificial] = 1;
        basis.push_back(next_artificial++);
        break;
    }
    table.push_back(std::move(t));
  }

  Tableau tableau(std::move(table), std::move(basis), columns);
  if (artificials > 0) {
    std::vector<Rational> phase_one(static_cast<std::size_t>(columns));
    for (int c = first_artificial; c < columns; ++c) phase_one[c] = -1;
    tableau.set_objective(phase_one);
    tableau.optimize();  // bounded above by zero
    if (sgn(tableau.value()) < 0) return {LPStatus::kInfeasible, 0, {}};
  }
  tableau.expel(first_artificial);

  std::vector<Rational> cost(static_cast<std::size_t>(columns));
  Rational constant = 0;
  for (int j = 0; j < n; ++j) {
    const Rational& c = program.objective[j];
    if (sgn(c) == 0) continue;
    constant += c * subs[j].offset;
    for (const auto& [col, sign] : subs[j].columns) {
      cost[col] += sign > 0 ? c : Rational(-c);
    }
  }
  tableau.set_objective(cost);
  if (!tableau.optimize()) return {LPStatus::kUnbounded, 0, {}};

  const auto y = tableau.solution();
  LPOutcome out{LPStatus::kOptimal, 0, {}};
  out.point.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Rational x = subs[j].offset;
    for (const auto& [col, sign] : subs[j].columns) {
      if (sign > 0) {
        x += y[col];
      } else {
        x -= y[col];
      }
    }
    out.value += program.objective[j] * x;
    out.point[j] = std::move(x);
  }
  if (!satisfies(program, out.point) || out.value != tableau.value() + constant) {
    throw std::logic_error("simplex certificate check failed");
  }
  return out;
}

std::string_view to_string(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal:
      return "optimal";
    case LPStatus::kInfeasible:
      return "infeasible";
    case LPStatus::kUnbounded:
      break;
  }
  return "unbounded";
}

}  // namespace fairdiv
