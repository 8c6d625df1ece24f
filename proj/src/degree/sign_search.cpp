#include "sign_search.hpp"

namespace boofdeg::detail {

namespace {

struct BudgetExhausted {};

mpq_class dot(const std::vector<Rational>& row, const std::vector<Rational>& a) {
    mpq_class acc = 0;
    for (std::size_t i = 0; i < row.size(); ++i)
        if (!row[i].is_zero() && !a[i].is_zero()) acc += row[i].raw() * a[i].raw();
    return acc;
}

class Search {
public:
    Search(const SignSearchProblem& p, long& budget, long& count)
        : p_(p), budget_(budget), count_(count), signs_(p.one_rows.size(), 0) {}

    bool dfs(bool root) {
        if (budget_ <= 0) throw BudgetExhausted{};
        --budget_;
        ++count_;
        const LpOutcome o = lp_solve(sign_pattern_lp(p_, signs_));
        if (o.status == LpStatus::Infeasible) return false;

        int branch = -1;
        mpq_class worst_gap = 0;
        int branch_sign = 1;
        for (std::size_t i = 0; i < signs_.size(); ++i) {
            if (signs_[i] != 0) continue;
            const mpq_class v = dot(p_.one_rows[i], o.witness);
            const mpq_class gap = 1 - abs(v);
            if (gap > worst_gap) {
                worst_gap = gap;
                branch = static_cast<int>(i);
                branch_sign = sgn(v) < 0 ? -1 : 1;
            }
        }
        if (branch < 0) {
            found_ = o.witness;
            final_signs_ = signs_;
            for (std::size_t i = 0; i < signs_.size(); ++i) {
                if (final_signs_[i] == 0) final_signs_[i] = sgn(dot(p_.one_rows[i], o.witness)) < 0 ? -1 : 1;
            }
            return true;
        }
        const int first = root ? 1 : branch_sign;
        signs_[branch] = first;
        if (dfs(false)) return true;
        if (!root) {
            signs_[branch] = -first;
            if (dfs(false)) return true;
        }
        signs_[branch] = 0;
        return false;
    }

    std::vector<Rational> found_;
    std::vector<int> final_signs_;

private:
    const SignSearchProblem& p_;
    long& budget_;
    long& count_;
    std::vector<int> signs_;
};

}  // namespace

LpProblem sign_pattern_lp(const SignSearchProblem& problem, const std::vector<int>& signs) {
    LpProblem lp(problem.num_vars);
    for (const auto& row : problem.zero_rows) {
        if (problem.eps.is_zero()) {
            lp.add(row, Relation::Equal, Rational(0));
        } else {
            lp.add(row, Relation::LessEqual, problem.eps);
            lp.add(row, Relation::GreaterEqual, -problem.eps);
        }
    }
    for (std::size_t i = 0; i < signs.size(); ++i) {
        if (signs[i] > 0) lp.add(problem.one_rows[i], Relation::GreaterEqual, Rational(1));
        else if (signs[i] < 0) lp.add(problem.one_rows[i], Relation::LessEqual, Rational(-1));
    }
    return lp;
}

SignSearchResult sign_search(const SignSearchProblem& problem, long& lp_budget, long& lp_count) {
    SignSearchResult out;
    Search s(problem, lp_budget, lp_count);
    try {
        if (s.dfs(true)) {
            out.status = SignSearchResult::Status::Found;
            out.coefficients = std::move(s.found_);
            out.signs = std::move(s.final_signs_);
        }
    } catch (const BudgetExhausted&) {
        out.status = SignSearchResult::Status::BudgetExceeded;
    }
    return out;
}

}  // namespace boofdeg::detail
