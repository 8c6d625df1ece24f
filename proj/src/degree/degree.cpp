#include "boofdeg/degree.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "boofdeg/classify.hpp"
#include "boofdeg/error.hpp"
#include "boofdeg/kernels.hpp"
#include "boofdeg/lp.hpp"
#include "boofdeg/matrix.hpp"
#include "sign_search.hpp"

namespace boofdeg {

namespace {

void require_cap(const TruthTable& f, int cap, const char* what) {
    if (f.num_vars() > cap) {
        throw CapError(std::string(what) + ": arity " + std::to_string(f.num_vars()) + " above cap " +
                       std::to_string(cap));
    }
}

std::vector<Rational> eval_row(std::uint64_t x, const std::vector<std::uint32_t>& monos) {
    std::vector<Rational> row(monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j)
        if ((monos[j] & x) == monos[j]) row[j] = Rational(1);
    return row;
}

MultilinearPoly poly_from(int n, const std::vector<std::uint32_t>& monos, const std::vector<Rational>& a) {
    MultilinearPoly p(n);
    for (std::size_t j = 0; j < monos.size(); ++j) p.set(monos[j], a[j]);
    return p;
}

std::string point_name(std::uint64_t x, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (x >> i & 1U) ? '1' : '0';
    return "x=" + s + " (x_1 first)";
}

std::vector<std::pair<std::uint64_t, int>> pattern_of(const TruthTable& f, const MultilinearPoly& p) {
    std::vector<std::pair<std::uint64_t, int>> out;
    const auto vals = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x)
        if (f.get(x)) out.emplace_back(x, vals[x].sign() < 0 ? -1 : 1);
    return out;
}

std::vector<Rational> binomial_row(int k, int d) {
    std::vector<Rational> row(d + 1);
    mpz_class c;
    for (int j = 0; j <= d; ++j) {
        mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(j));
        row[j] = Rational(c);
    }
    return row;
}

/// sum over |S| <= d of a[|S|] x^S, which equals sum_j a[j] binom(|x|, j) on the cube.
MultilinearPoly elementary_expansion(int n, const std::vector<Rational>& a) {
    MultilinearPoly p(n);
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
        const int k = popcount(s);
        if (k < static_cast<int>(a.size()) && !a[k].is_zero()) p.set(s, a[k]);
    }
    return p;
}

}  // namespace

const char* to_string(WitnessKind kind) {
    switch (kind) {
        case WitnessKind::ExactInterpolation: return "exact-interpolation";
        case WitnessKind::LpFeasible: return "lp-feasible";
        case WitnessKind::SignPattern: return "sign-pattern";
    }
    return "?";
}

nlohmann::json DegreeWitness::to_json() const {
    nlohmann::json j;
    j["value"] = value;
    j["exact"] = exact;
    j["lower"] = lower;
    j["upper"] = upper;
    j["kind"] = to_string(kind);
    if (eps) j["eps"] = eps->to_string();
    if (witness) j["witness"] = witness->to_json();
    if (!sign_pattern.empty()) {
        nlohmann::json pat = nlohmann::json::array();
        for (const auto& [x, s] : sign_pattern) pat.push_back({x, s});
        j["sign_pattern"] = pat;
    }
    j["lp_solves"] = lp_solves;
    return j;
}

void verify_interpolation(const TruthTable& f, const MultilinearPoly& p) {
    const auto v = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (v[x] != Rational(f.get(x) ? 1 : 0))
            throw VerificationError("interpolant disagrees with f at " + point_name(x, f.num_vars()));
    }
}

void verify_nd(const TruthTable& f, const MultilinearPoly& p) {
    const auto v = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (v[x].is_zero() == f.get(x))
            throw VerificationError("non-deterministic witness wrong at " + point_name(x, f.num_vars()));
    }
}

void verify_sign(const TruthTable& f, const MultilinearPoly& p) {
    const auto v = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const bool ok = f.get(x) ? v[x] <= Rational(-1) : v[x] >= Rational(1);
        if (!ok) throw VerificationError("sign witness misses margin at " + point_name(x, f.num_vars()));
    }
}

void verify_approx(const TruthTable& f, const MultilinearPoly& p, const Rational& eps) {
    const auto v = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if ((v[x] - Rational(f.get(x) ? 1 : 0)).abs() > eps)
            throw VerificationError("approximation error above eps at " + point_name(x, f.num_vars()));
    }
}

void verify_approx_nd(const TruthTable& f, const MultilinearPoly& p, const Rational& eps) {
    const auto v = p.values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        const bool ok = f.get(x) ? v[x].abs() >= Rational(1) : v[x].abs() <= eps;
        if (!ok) throw VerificationError("approximate ND witness wrong at " + point_name(x, f.num_vars()));
    }
}

DegreeWitness exact_degree(const TruthTable& f) {
    require_cap(f, 16, "exact_degree");
    const int n = f.num_vars();
    std::vector<std::int32_t> a(f.size());
    for (std::uint64_t x = 0; x < f.size(); ++x) a[x] = f.get(x) ? 1 : 0;
    kernels::mobius(a, n);
    MultilinearPoly p(n);
    for (std::uint64_t s = 0; s < f.size(); ++s)
        if (a[s] != 0) p.set(static_cast<std::uint32_t>(s), Rational(static_cast<long>(a[s])));
    verify_interpolation(f, p);
    DegreeWitness w;
    w.value = w.lower = w.upper = p.degree();
    w.witness = std::move(p);
    w.kind = WitnessKind::ExactInterpolation;
    return w;
}

DegreeWitness ndeg(const TruthTable& f) {
    require_cap(f, 8, "ndeg");
    const int n = f.num_vars();
    const auto zeros = f.zeros();
    const auto ones = f.ones();
    DegreeWitness w;
    w.kind = WitnessKind::ExactInterpolation;
    for (int d = 0; d <= n; ++d) {
        const auto monos = monomials_up_to(n, d);
        RationalMatrix m(zeros.size(), monos.size());
        for (std::size_t r = 0; r < zeros.size(); ++r)
            for (std::size_t c = 0; c < monos.size(); ++c)
                if ((monos[c] & zeros[r]) == monos[c]) m(r, c) = Rational(1);
        RankNullspace ns;
        if (zeros.empty()) {
            for (std::size_t c = 0; c < monos.size(); ++c) {
                std::vector<Rational> e(monos.size());
                e[c] = Rational(1);
                ns.basis.push_back(std::move(e));
            }
        } else {
            ns = rank_nullspace(m);
        }
        // Evaluation of each basis vector at each 1-input.
        std::vector<std::vector<Rational>> at(ns.basis.size(), std::vector<Rational>(ones.size()));
        bool covered = true;
        for (std::size_t k = 0; k < ones.size() && covered; ++k) {
            bool any = false;
            for (std::size_t b = 0; b < ns.basis.size(); ++b) {
                mpq_class acc = 0;
                for (std::size_t c = 0; c < monos.size(); ++c)
                    if ((monos[c] & ones[k]) == monos[c]) acc += ns.basis[b][c].raw();
                at[b][k] = Rational(acc);
                any = any || sgn(acc) != 0;
            }
            covered = any;
        }
        if (!covered) continue;

        // Fixed seed keeps the witness reproducible.
        std::mt19937_64 rng(0x5eed + d);
        for (int attempt = 0;; ++attempt) {
            if (attempt == 1000) throw VerificationError("ndeg: no generic combination found");
            std::vector<Rational> lambda(ns.basis.size());
            for (auto& l : lambda) l = Rational(static_cast<long>(1 + rng() % (attempt < 10 ? 7 : 1000)));
            bool ok = true;
            for (std::size_t k = 0; k < ones.size() && ok; ++k) {
                mpq_class acc = 0;
                for (std::size_t b = 0; b < lambda.size(); ++b) acc += lambda[b].raw() * at[b][k].raw();
                ok = sgn(acc) != 0;
            }
            if (!ok) continue;
            std::vector<Rational> coeff(monos.size());
            for (std::size_t b = 0; b < lambda.size(); ++b)
                for (std::size_t c = 0; c < monos.size(); ++c) coeff[c] += lambda[b] * ns.basis[b][c];
            MultilinearPoly p = poly_from(n, monos, coeff);
            if (ones.empty()) p = MultilinearPoly(n);
            verify_nd(f, p);
            w.value = w.lower = w.upper = d;
            w.witness = std::move(p);
            return w;
        }
    }
    throw VerificationError("ndeg: no degree up to n works");
}

namespace {

DegreeWitness lp_degree_search(const TruthTable& f, int cap_start,
                               const std::function<void(LpProblem&, const std::vector<Rational>&, bool)>& add_point,
                               WitnessKind kind) {
    const int n = f.num_vars();
    DegreeWitness w;
    w.kind = kind;
    for (int d = cap_start; d <= n; ++d) {
        const auto monos = monomials_up_to(n, d);
        LpProblem lp(static_cast<int>(monos.size()));
        for (std::uint64_t x = 0; x < f.size(); ++x) add_point(lp, eval_row(x, monos), f.get(x));
        ++w.lp_solves;
        const auto o = lp_solve(lp);
        if (o.status == LpStatus::Infeasible) continue;
        w.value = w.lower = w.upper = d;
        w.witness = poly_from(n, monos, o.witness);
        return w;
    }
    throw VerificationError("degree LP infeasible at degree n");
}

}  // namespace

DegreeWitness sign_degree(const TruthTable& f) {
    require_cap(f, 8, "sign_degree");
    auto w = lp_degree_search(
        f, 0,
        [](LpProblem& lp, const std::vector<Rational>& row, bool one) {
            if (one) lp.add(row, Relation::LessEqual, Rational(-1));
            else lp.add(row, Relation::GreaterEqual, Rational(1));
        },
        WitnessKind::LpFeasible);
    verify_sign(f, *w.witness);
    return w;
}

DegreeWitness approx_degree(const TruthTable& f, const Rational& eps) {
    if (eps < Rational(0) || eps >= Rational(1, 2)) throw PreconditionError("approx_degree: eps must lie in [0, 1/2)");
    if (f.num_vars() <= 16) {
        // Averaging an approximator over all variable permutations keeps its
        // degree and error, so symmetric f reduces to the binomial basis.
        if (auto profile = symmetric_profile(f)) {
            const int n = f.num_vars();
            DegreeWitness w;
            w.kind = WitnessKind::LpFeasible;
            w.eps = eps;
            for (int d = 0; d <= n; ++d) {
                LpProblem lp(d + 1);
                for (int k = 0; k <= n; ++k) {
                    const Rational target((*profile)[k] ? 1 : 0);
                    if (eps.is_zero()) {
                        lp.add(binomial_row(k, d), Relation::Equal, target);
                    } else {
                        lp.add(binomial_row(k, d), Relation::LessEqual, target + eps);
                        lp.add(binomial_row(k, d), Relation::GreaterEqual, target - eps);
                    }
                }
                ++w.lp_solves;
                const auto o = lp_solve(lp);
                if (o.status == LpStatus::Infeasible) continue;
                w.value = w.lower = w.upper = d;
                w.witness = elementary_expansion(n, o.witness);
                verify_approx(f, *w.witness, eps);
                if (w.witness->degree() > d) throw VerificationError("approx_degree: symmetric witness degree");
                return w;
            }
            throw VerificationError("approx_degree: symmetric LP infeasible at degree n");
        }
    }
    require_cap(f, 8, "approx_degree");
    auto w = lp_degree_search(
        f, 0,
        [&eps](LpProblem& lp, const std::vector<Rational>& row, bool one) {
            const Rational target(one ? 1 : 0);
            if (eps.is_zero()) {
                lp.add(row, Relation::Equal, target);
            } else {
                lp.add(row, Relation::LessEqual, target + eps);
                lp.add(row, Relation::GreaterEqual, target - eps);
            }
        },
        WitnessKind::LpFeasible);
    w.eps = eps;
    verify_approx(f, *w.witness, eps);
    return w;
}

DegreeWitness approx_ndeg(const TruthTable& f, const Rational& eps, const ApproxNdegOptions& options) {
    if (eps < Rational(0) || eps >= Rational(1)) throw PreconditionError("approx_ndeg: eps must lie in [0, 1)");
    const int n = f.num_vars();
    const auto ones = f.ones();
    const auto zeros = f.zeros();
    if (n > options.storage_cap ||
        (n > options.general_cap && static_cast<int>(ones.size()) > options.sparse_ones_cap)) {
        throw CapError("approx_ndeg: arity " + std::to_string(n) + " with " + std::to_string(ones.size()) +
                       " 1-inputs exceeds the configured cap");
    }

    DegreeWitness w;
    w.kind = WitnessKind::SignPattern;
    w.eps = eps;
    if (ones.empty() || zeros.empty()) {
        w.witness = MultilinearPoly::constant(n, Rational(ones.empty() ? 0 : 1));
        w.sign_pattern = pattern_of(f, *w.witness);
        return w;
    }

    // Upper bounds: a delta-approximator with delta = eps/(1+eps), rescaled by
    // 1/(1-delta), and a non-deterministic polynomial rescaled to |p| >= 1.
    const Rational delta = eps / (Rational(1) + eps);
    auto ad = approx_degree(f, delta);
    w.lp_solves += ad.lp_solves;
    int upper = ad.value;
    MultilinearPoly best = *ad.witness * (Rational(1) / (Rational(1) - delta));
    if (n <= 6) {
        auto nd = ndeg(f);
        if (nd.value < upper) {
            const auto vals = nd.witness->values();
            Rational mn;
            bool first = true;
            for (auto y : ones) {
                const Rational a = vals[y].abs();
                if (first || a < mn) mn = a;
                first = false;
            }
            upper = nd.value;
            best = *nd.witness * (Rational(1) / mn);
        }
    }
    int lower = 1;
    if (options.symmetric_shortcut) {
        if (auto profile = symmetric_profile(f)) {
            const auto sb = symmetric_nd_bounds(*profile, eps);
            lower = std::max(lower, sb.lower);
            if (sb.upper < upper) {
                upper = sb.upper;
                // Re-expand u(|x|) in the multilinear basis through its values.
                std::vector<Rational> vals(f.size());
                for (std::uint64_t x = 0; x < f.size(); ++x)
                    vals[x] = sb.upper_witness.evaluate(Rational(static_cast<long>(popcount(x))));
                best = MultilinearPoly::interpolate(n, vals);
            }
            // With 1-inputs only at weights 0 and n every 1-input is fixed by
            // all permutations, so symmetrizing any witness keeps |p| >= 1 there
            // and the univariate search is exact.
            bool singleton_ones = true;
            for (int k = 1; k < n; ++k) singleton_ones = singleton_ones && !(*profile)[k];
            if (singleton_ones) lower = std::max(lower, sb.upper);
        }
    }

    long budget = options.lp_budget;
    for (int d = lower; d < upper; ++d) {
        const auto monos = monomials_up_to(n, d);
        detail::SignSearchProblem sp;
        sp.num_vars = static_cast<int>(monos.size());
        sp.eps = eps;
        for (auto x : zeros) sp.zero_rows.push_back(eval_row(x, monos));
        for (auto y : ones) sp.one_rows.push_back(eval_row(y, monos));
        const auto r = detail::sign_search(sp, budget, w.lp_solves);
        if (r.status == detail::SignSearchResult::Status::Infeasible) continue;
        if (r.status == detail::SignSearchResult::Status::BudgetExceeded) {
            w.exact = false;
            w.lower = d;
            w.upper = w.value = upper;
            w.witness = best;
            verify_approx_nd(f, best, eps);
            w.sign_pattern = pattern_of(f, best);
            return w;
        }
        w.value = w.lower = w.upper = d;
        w.witness = poly_from(n, monos, r.coefficients);
        verify_approx_nd(f, *w.witness, eps);
        w.sign_pattern = pattern_of(f, *w.witness);
        return w;
    }
    w.value = w.lower = w.upper = upper;
    w.witness = best;
    verify_approx_nd(f, best, eps);
    if (best.degree() > upper) throw VerificationError("approx_ndeg: upper-bound witness has excess degree");
    w.sign_pattern = pattern_of(f, best);
    return w;
}

MMeasure m_measure(const TruthTable& f, const Rational& eps, const ApproxNdegOptions& options) {
    MMeasure m;
    m.of_f = approx_ndeg(f, eps, options);
    m.of_complement = approx_ndeg(complement(f), eps, options);
    m.value = std::max(m.of_f.value, m.of_complement.value);
    m.exact = m.of_f.exact && m.of_complement.exact;
    m.lower = std::max(m.of_f.lower, m.of_complement.lower);
    m.upper = std::max(m.of_f.upper, m.of_complement.upper);
    return m;
}

SymmetricBounds symmetric_nd_bounds(std::span<const std::uint8_t> profile, const Rational& eps) {
    if (profile.empty()) throw PreconditionError("symmetric_nd_bounds: profile must cover weights 0..n");
    if (eps < Rational(0) || eps >= Rational(1)) throw PreconditionError("symmetric_nd_bounds: eps must lie in [0, 1)");
    const int n = static_cast<int>(profile.size()) - 1;
    SymmetricBounds out;
    std::vector<int> zero_w, one_w;
    for (int k = 0; k <= n; ++k) (profile[k] ? one_w : zero_w).push_back(k);
    if (one_w.empty() || zero_w.empty()) {
        const Rational c(one_w.empty() ? 0 : 1);
        out.upper_witness = UnivariatePoly({c});
        out.lower_certificate = UnivariatePoly({c});
        return out;
    }

    long budget = 1L << 40, count = 0;
    for (int d = 0; d <= n; ++d) {
        detail::SignSearchProblem sp;
        sp.num_vars = d + 1;
        sp.eps = eps;
        for (int k : zero_w) sp.zero_rows.push_back(binomial_row(k, d));
        for (int k : one_w) sp.one_rows.push_back(binomial_row(k, d));
        const auto r = detail::sign_search(sp, budget, count);
        if (r.status != detail::SignSearchResult::Status::Found) continue;
        out.upper = d;
        out.upper_witness = UnivariatePoly::from_binomial_basis(r.coefficients);
        break;
    }

    const Rational eps2 = eps * eps;
    for (int d = 0; d <= n; ++d) {
        LpProblem lp(d + 1);
        for (int k : zero_w) {
            lp.add(binomial_row(k, d), Relation::GreaterEqual, Rational(0));
            lp.add(binomial_row(k, d), Relation::LessEqual, eps2);
        }
        for (int k : one_w) lp.add(binomial_row(k, d), Relation::GreaterEqual, Rational(1));
        const auto o = lp_solve(lp);
        if (o.status == LpStatus::Infeasible) continue;
        out.lower_certificate_degree = d;
        out.lower = (d + 1) / 2;
        out.lower_certificate = UnivariatePoly::from_binomial_basis(o.witness);
        break;
    }

    for (int k = 0; k <= n; ++k) {
        const Rational t(static_cast<long>(k));
        const Rational u = out.upper_witness.evaluate(t);
        const Rational v = out.lower_certificate.evaluate(t);
        const bool ok_u = profile[k] ? u.abs() >= Rational(1) : u.abs() <= eps;
        const bool ok_v = profile[k] ? v >= Rational(1) : (v >= Rational(0) && v <= eps2);
        if (!ok_u || !ok_v) throw VerificationError("symmetric_nd_bounds: univariate witness fails at weight " +
                                                    std::to_string(k));
    }
    return out;
}

int nor_reference_bound(int n) {
    if (n < 1) throw PreconditionError("nor_reference_bound: n must be positive");
    int d = 0;
    while (!meets_nor_reference(d, n)) ++d;
    return d;
}

bool meets_nor_reference(int d, int n) { return 8L * d * d >= n; }

}  // namespace boofdeg
