#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "boofdeg/multilinear.hpp"
#include "boofdeg/rational.hpp"
#include "boofdeg/truth_table.hpp"
#include "boofdeg/univariate.hpp"

namespace boofdeg {

enum class WitnessKind { ExactInterpolation, LpFeasible, SignPattern };

const char* to_string(WitnessKind kind);

/// A degree value with the polynomial that certifies its upper side.
///
/// When `exact` is false the search ran out of budget: the true value lies in
/// [lower, upper], `value` equals `upper`, and the witness certifies `upper`.
struct DegreeWitness {
    int value = 0;
    bool exact = true;
    int lower = 0;
    int upper = 0;
    std::optional<MultilinearPoly> witness;
    WitnessKind kind = WitnessKind::ExactInterpolation;
    std::optional<Rational> eps;
    /// (1-input, sign) pairs for sign-pattern witnesses, sorted by input.
    std::vector<std::pair<std::uint64_t, int>> sign_pattern;
    long lp_solves = 0;

    nlohmann::json to_json() const;
};

/// Moebius interpolation. n <= 16.
DegreeWitness exact_degree(const TruthTable& f);
/// Non-deterministic degree via nullspace rank tests. n <= 8.
DegreeWitness ndeg(const TruthTable& f);
/// Sign degree with margin 1. n <= 8.
DegreeWitness sign_degree(const TruthTable& f);
/// Approximate degree, 0 <= eps < 1/2. n <= 8.
DegreeWitness approx_degree(const TruthTable& f, const Rational& eps);

struct ApproxNdegOptions {
    /// Maximum LP solves across the whole search before returning a bracket.
    long lp_budget = 200000;
    /// Arity cap for functions with many 1-inputs.
    int general_cap = 5;
    /// Above general_cap, functions with at most this many 1-inputs are still accepted.
    int sparse_ones_cap = 16;
    /// Absolute arity cap.
    int storage_cap = 10;
    /// Use the univariate bracket for symmetric f to narrow the search.
    bool symmetric_shortcut = true;
};

/// Approximate non-deterministic degree, 0 <= eps < 1.
DegreeWitness approx_ndeg(const TruthTable& f, const Rational& eps, const ApproxNdegOptions& options = {});

struct MMeasure {
    DegreeWitness of_f;
    DegreeWitness of_complement;
    int value = 0;
    bool exact = true;
    int lower = 0;
    int upper = 0;
};

MMeasure m_measure(const TruthTable& f, const Rational& eps, const ApproxNdegOptions& options = {});

struct SymmetricBounds {
    int lower = 0;
    int upper = 0;
    /// |u(k)| <= eps on 0-weights, |u(k)| >= 1 on 1-weights; deg u = upper.
    UnivariatePoly upper_witness;
    /// 0 <= v(k) <= eps^2 on 0-weights, v(k) >= 1 on 1-weights; lower = ceil(deg v / 2).
    UnivariatePoly lower_certificate;
    int lower_certificate_degree = 0;
};

/// Univariate bracket on N_eps of the symmetric function with the given profile.
SymmetricBounds symmetric_nd_bounds(std::span<const std::uint8_t> profile, const Rational& eps);

/// Least integer d with 8 d^2 >= n.
int nor_reference_bound(int n);
/// The comparison 8 d^2 >= n, i.e. d >= sqrt(n/8).
bool meets_nor_reference(int d, int n);

// Exact checks of the defining constraints. Each throws VerificationError
// naming the first violating cube point.
void verify_interpolation(const TruthTable& f, const MultilinearPoly& p);
void verify_nd(const TruthTable& f, const MultilinearPoly& p);
void verify_sign(const TruthTable& f, const MultilinearPoly& p);
void verify_approx(const TruthTable& f, const MultilinearPoly& p, const Rational& eps);
void verify_approx_nd(const TruthTable& f, const MultilinearPoly& p, const Rational& eps);

}  // namespace boofdeg
