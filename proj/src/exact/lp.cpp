#include "boofdeg/lp.hpp"

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "boofdeg/error.hpp"

namespace boofdeg {

void LpProblem::add(std::vector<Rational> coefficients, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

void LpProblem::validate() const {
    if (num_vars < 0) throw std::invalid_argument("LpProblem: negative variable count");
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        if (constraints[i].coefficients.size() != static_cast<std::size_t>(num_vars)) {
            throw std::invalid_argument("LpProblem: constraint " + std::to_string(i) + " has wrong width");
        }
    }
    if (objective && objective->size() != static_cast<std::size_t>(num_vars)) {
        throw std::invalid_argument("LpProblem: objective has wrong width");
    }
}

bool LpProblem::satisfied_by(std::span<const Rational> point) const {
    if (point.size() != static_cast<std::size_t>(num_vars)) return false;
    for (const auto& c : constraints) {
        mpq_class lhs = 0;
        for (int j = 0; j < num_vars; ++j) {
            if (!c.coefficients[j].is_zero() && !point[j].is_zero()) lhs += c.coefficients[j].raw() * point[j].raw();
        }
        int cmpv = cmp(lhs, c.rhs.raw());
        switch (c.relation) {
            case Relation::LessEqual:
                if (cmpv > 0) return false;
                break;
            case Relation::GreaterEqual:
                if (cmpv < 0) return false;
                break;
            case Relation::Equal:
                if (cmpv != 0) return false;
                break;
        }
    }
    return true;
}

Rational LpProblem::objective_value(std::span<const Rational> point) const {
    Rational v;
    if (!objective) return v;
    for (int j = 0; j < num_vars; ++j) v += (*objective)[j] * point[j];
    return v;
}

std::string LpProblem::dump() const {
    std::ostringstream os;
    os << "vars " << num_vars << "\n";
    if (objective) {
        os << "min";
        for (const auto& c : *objective) os << ' ' << c.to_short_string();
        os << "\n";
    }
    for (const auto& c : constraints) {
        for (const auto& a : c.coefficients) os << a.to_short_string() << ' ';
        os << (c.relation == Relation::LessEqual ? "<=" : c.relation == Relation::GreaterEqual ? ">=" : "=");
        os << ' ' << c.rhs.to_short_string() << "\n";
    }
    return os.str();
}

const char* to_string(LpStatus status) {
    switch (status) {
        case LpStatus::Feasible: return "feasible";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Unbounded: return "unbounded";
    }
    return "?";
}

namespace {

struct Overflow {};

/// Integer standard form shared by both arithmetic back ends.
///
/// Columns: x+ (n), x- (n), one slack or surplus per inequality row, one
/// artificial per >= or = row, then the right-hand side.
struct StandardForm {
    int rows = 0;
    int n = 0;
    int cols = 0;          // excluding rhs
    int first_artificial = 0;
    std::vector<mpz_class> cells;  // (rows + 2) x (cols + 1)
    std::vector<int> basis;
    bool has_objective = false;
};

mpz_class lcm_of_denominators(const LpConstraint& c) {
    mpz_class l = 1;
    for (const auto& a : c.coefficients) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.raw().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.rhs.raw().get_den_mpz_t());
    return l;
}

mpz_class scaled(const Rational& q, const mpz_class& l) { return q.raw().get_num() * (l / q.raw().get_den()); }

StandardForm build_standard_form(const LpProblem& p) {
    StandardForm sf;
    sf.rows = static_cast<int>(p.constraints.size());
    sf.n = p.num_vars;

    std::vector<Relation> rel(sf.rows);
    std::vector<int> sign(sf.rows, 1);
    int slacks = 0;
    int arts = 0;
    for (int i = 0; i < sf.rows; ++i) {
        const auto& c = p.constraints[i];
        rel[i] = c.relation;
        if (c.rhs.sign() < 0) {
            sign[i] = -1;
            if (rel[i] == Relation::LessEqual) rel[i] = Relation::GreaterEqual;
            else if (rel[i] == Relation::GreaterEqual) rel[i] = Relation::LessEqual;
        }
        if (rel[i] != Relation::Equal) ++slacks;
        if (rel[i] != Relation::LessEqual) ++arts;
    }
    sf.first_artificial = 2 * sf.n + slacks;
    sf.cols = sf.first_artificial + arts;
    const int width = sf.cols + 1;
    sf.cells.assign(static_cast<std::size_t>(sf.rows + 2) * width, 0);
    sf.basis.assign(sf.rows, -1);
    auto at = [&](int r, int c) -> mpz_class& { return sf.cells[static_cast<std::size_t>(r) * width + c]; };

    int next_slack = 2 * sf.n;
    int next_art = sf.first_artificial;
    const int w_row = sf.rows;
    for (int i = 0; i < sf.rows; ++i) {
        const auto& c = p.constraints[i];
        mpz_class l = lcm_of_denominators(c) * sign[i];
        for (int j = 0; j < sf.n; ++j) {
            at(i, j) = scaled(c.coefficients[j], l);
            at(i, sf.n + j) = -at(i, j);
        }
        at(i, sf.cols) = scaled(c.rhs, l);
        if (rel[i] == Relation::LessEqual) {
            at(i, next_slack) = 1;
            sf.basis[i] = next_slack++;
        } else {
            if (rel[i] == Relation::GreaterEqual) at(i, next_slack++) = -1;
            at(i, next_art) = 1;
            sf.basis[i] = next_art++;
            for (int j = 0; j < sf.first_artificial; ++j) at(w_row, j) -= at(i, j);
            at(w_row, sf.cols) -= at(i, sf.cols);
        }
    }

    if (p.objective) {
        sf.has_objective = true;
        mpz_class l = 1;
        for (const auto& a : *p.objective) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.raw().get_den_mpz_t());
        for (int j = 0; j < sf.n; ++j) {
            at(sf.rows + 1, j) = scaled((*p.objective)[j], l);
            at(sf.rows + 1, sf.n + j) = -at(sf.rows + 1, j);
        }
    }
    return sf;
}

struct I64Ops {
    using Int = std::int64_t;
    static Int from(const mpz_class& z) {
        if (!z.fits_slong_p()) throw Overflow{};
        return z.get_si();
    }
    static mpq_class ratio(Int a, Int b) { return mpq_class(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b))); }
    static int sign(Int v) { return (v > 0) - (v < 0); }
    static bool is_zero(Int v) { return v == 0; }
    /// a <- (a*p - b*c) / d, exact by the fraction-free invariant.
    static void update(Int& a, Int p, Int b, Int c, Int d) {
        __int128 t = static_cast<__int128>(a) * p - static_cast<__int128>(b) * c;
        t /= d;
        if (t > std::numeric_limits<Int>::max() || t < std::numeric_limits<Int>::min()) throw Overflow{};
        a = static_cast<Int>(t);
    }
    /// sign(a/b - c/e) for b, e > 0.
    static int compare_ratio(Int a, Int b, Int c, Int e) {
        __int128 l = static_cast<__int128>(a) * e;
        __int128 r = static_cast<__int128>(c) * b;
        return (l > r) - (l < r);
    }
    static void negate(Int& v) {
        if (v == std::numeric_limits<Int>::min()) throw Overflow{};
        v = -v;
    }
};

struct MpzOps {
    using Int = mpz_class;
    static Int from(const mpz_class& z) { return z; }
    static mpq_class ratio(const Int& a, const Int& b) { return mpq_class(a, b); }
    static int sign(const Int& v) { return sgn(v); }
    static bool is_zero(const Int& v) { return sgn(v) == 0; }
    static void update(Int& a, const Int& p, const Int& b, const Int& c, const Int& d) {
        thread_local mpz_class t1, t2;
        mpz_mul(t1.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
        if (sgn(b) != 0) {
            mpz_mul(t2.get_mpz_t(), b.get_mpz_t(), c.get_mpz_t());
            mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        }
        mpz_divexact(a.get_mpz_t(), t1.get_mpz_t(), d.get_mpz_t());
    }
    static int compare_ratio(const Int& a, const Int& b, const Int& c, const Int& e) {
        thread_local mpz_class l, r;
        mpz_mul(l.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t());
        mpz_mul(r.get_mpz_t(), c.get_mpz_t(), b.get_mpz_t());
        return cmp(l, r);
    }
    static void negate(Int& v) { mpz_neg(v.get_mpz_t(), v.get_mpz_t()); }
};

struct RawResult {
    LpStatus status = LpStatus::Infeasible;
    std::vector<mpq_class> x;
    long pivots = 0;
};

template <class Ops>
class Tableau {
public:
    using Int = typename Ops::Int;

    explicit Tableau(const StandardForm& sf)
        : rows_(sf.rows), cols_(sf.cols), width_(sf.cols + 1), n_(sf.n),
          first_art_(sf.first_artificial), basis_(sf.basis), live_(sf.rows, true) {
        cells_.reserve(sf.cells.size());
        for (const auto& z : sf.cells) cells_.push_back(Ops::from(z));
    }

    RawResult solve(bool has_objective) {
        RawResult out;
        const int w_row = rows_;
        const int z_row = rows_ + 1;

        run(w_row, first_art_ + (cols_ - first_art_), out.pivots);
        if (!Ops::is_zero(at(w_row, cols_))) {
            out.status = LpStatus::Infeasible;
            return out;
        }
        // Drive remaining (zero-level) artificials out of the basis.
        for (int r = 0; r < rows_; ++r) {
            if (basis_[r] < first_art_) continue;
            int enter = -1;
            for (int j = 0; j < first_art_; ++j) {
                if (!Ops::is_zero(at(r, j))) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) {
                live_[r] = false;
            } else {
                pivot(r, enter);
                ++out.pivots;
            }
        }

        out.status = LpStatus::Feasible;
        if (has_objective) {
            bool bounded = run(z_row, first_art_, out.pivots);
            out.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
        }

        std::vector<mpq_class> col_value(cols_, 0);
        for (int r = 0; r < rows_; ++r) {
            if (live_[r]) col_value[basis_[r]] = Ops::ratio(at(r, cols_), det_);
        }
        out.x.resize(n_);
        for (int j = 0; j < n_; ++j) out.x[j] = col_value[j] - col_value[n_ + j];
        return out;
    }

private:
    Int& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * width_ + c]; }

    /// Bland's rule on objective row `obj` over columns [0, allowed). Returns
    /// false if the objective is unbounded below.
    bool run(int obj, int allowed, long& pivots) {
        for (;;) {
            int s = -1;
            for (int j = 0; j < allowed; ++j) {
                if (Ops::sign(at(obj, j)) < 0) {
                    s = j;
                    break;
                }
            }
            if (s < 0) return true;
            int r = -1;
            for (int i = 0; i < rows_; ++i) {
                if (!live_[i] || Ops::sign(at(i, s)) <= 0) continue;
                if (r < 0) {
                    r = i;
                    continue;
                }
                int c = Ops::compare_ratio(at(i, cols_), at(i, s), at(r, cols_), at(r, s));
                if (c < 0 || (c == 0 && basis_[i] < basis_[r])) r = i;
            }
            if (r < 0) return false;
            pivot(r, s);
            ++pivots;
        }
    }

    void pivot(int r, int s) {
        const int total_rows = rows_ + 2;
        const Int p = at(r, s);
        for (int i = 0; i < total_rows; ++i) {
            if (i == r) continue;
            const Int factor = at(i, s);
            Int* row = &cells_[static_cast<std::size_t>(i) * width_];
            const Int* prow = &cells_[static_cast<std::size_t>(r) * width_];
            for (int j = 0; j < width_; ++j) {
                if (j == s) continue;
                Ops::update(row[j], p, factor, prow[j], det_);
            }
            row[s] = 0;
        }
        det_ = p;
        basis_[r] = s;
        if (Ops::sign(det_) < 0) {
            for (auto& v : cells_) Ops::negate(v);
            Ops::negate(det_);
        }
    }

    int rows_;
    int cols_;
    int width_;
    int n_;
    int first_art_;
    std::vector<Int> cells_;
    std::vector<int> basis_;
    std::vector<bool> live_;
    Int det_ = 1;
};

}  // namespace

LpOutcome lp_solve(const LpProblem& problem) {
    problem.validate();
    StandardForm sf = build_standard_form(problem);

    RawResult raw;
    LpOutcome out;
    try {
        Tableau<I64Ops> t(sf);
        raw = t.solve(sf.has_objective);
    } catch (const Overflow&) {
        Tableau<MpzOps> t(sf);
        raw = t.solve(sf.has_objective);
        out.big_integer_fallback = true;
    }

    out.status = raw.status;
    out.pivots = raw.pivots;
    if (raw.status == LpStatus::Infeasible) return out;

    out.witness.reserve(raw.x.size());
    for (auto& q : raw.x) out.witness.emplace_back(std::move(q));
    if (!problem.satisfied_by(out.witness)) {
        throw VerificationError("lp_solve: witness violates a constraint\n" + problem.dump());
    }
    if (raw.status == LpStatus::Optimal) out.value = problem.objective_value(out.witness);
    return out;
}

}  // namespace boofdeg
