#pragma once

#include <cstdint>
#include <vector>

#include "boofdeg/lp.hpp"
#include "boofdeg/rational.hpp"

namespace boofdeg::detail {

/// Points are given by their evaluation rows: the value of the candidate at a
/// point is row . a for the unknown coefficient vector a.
struct SignSearchProblem {
    int num_vars = 0;
    /// |row . a| <= eps (equality when eps = 0).
    std::vector<std::vector<Rational>> zero_rows;
    /// |row . a| >= 1, linearized by a sign per row.
    std::vector<std::vector<Rational>> one_rows;
    Rational eps;
};

struct SignSearchResult {
    enum class Status { Found, Infeasible, BudgetExceeded };
    Status status = Status::Infeasible;
    std::vector<Rational> coefficients;
    /// +1 or -1 per one_row when Found.
    std::vector<int> signs;
};

/// Depth-first branch and bound over sign patterns. Each node solves the LP
/// with the zero rows and the assigned one rows only; an infeasible relaxation
/// prunes the subtree. The branching row is the unassigned one whose relaxed
/// value is furthest from the region |v| >= 1 (ties to the lowest index), and
/// the sign of the relaxed value is tried first. The first branching row is
/// fixed to +1 because a -> -a maps solutions to solutions.
///
/// `lp_budget` is decremented per LP solve; reaching zero aborts the search.
SignSearchResult sign_search(const SignSearchProblem& problem, long& lp_budget, long& lp_count);

/// Single LP: zero rows as above, one rows with prescribed signs.
LpProblem sign_pattern_lp(const SignSearchProblem& problem, const std::vector<int>& signs);

}  // namespace boofdeg::detail
