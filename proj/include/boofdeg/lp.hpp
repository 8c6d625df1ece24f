#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boofdeg/rational.hpp"

namespace boofdeg {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LpConstraint {
    std::vector<Rational> coefficients;
    Relation relation = Relation::LessEqual;
    Rational rhs;
};

/// Linear program over free real variables. Sign restrictions, if any, are
/// ordinary constraints. The optional objective is minimized.
struct LpProblem {
    int num_vars = 0;
    std::vector<LpConstraint> constraints;
    std::optional<std::vector<Rational>> objective;

    explicit LpProblem(int vars = 0) : num_vars(vars) {}

    void add(std::vector<Rational> coefficients, Relation relation, Rational rhs);
    /// Throws std::invalid_argument if any row has the wrong width.
    void validate() const;
    bool satisfied_by(std::span<const Rational> point) const;
    Rational objective_value(std::span<const Rational> point) const;

    /// Plain-text listing, one constraint per line.
    std::string dump() const;
};

enum class LpStatus { Feasible, Infeasible, Optimal, Unbounded };

const char* to_string(LpStatus status);

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    /// Present for Feasible, Optimal and Unbounded (a feasible point).
    std::vector<Rational> witness;
    /// Objective value at the witness when status is Optimal.
    Rational value;
    /// Simplex pivots performed across both phases.
    long pivots = 0;
    /// True if the 64-bit tableau overflowed and the solve was redone in GMP.
    bool big_integer_fallback = false;
};

/// Two-phase primal simplex in exact arithmetic with Bland's least-index rule.
///
/// The tableau is kept fraction-free (integer entries over one common
/// determinant). It first runs on 64-bit integers with 128-bit intermediates
/// and restarts on GMP integers if any entry leaves the 64-bit range, so the
/// answer never depends on the fallback. Witnesses are re-verified with exact
/// rationals before return.
LpOutcome lp_solve(const LpProblem& problem);

}  // namespace boofdeg
