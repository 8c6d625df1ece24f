#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "boofdeg/formula.hpp"
#include "boofdeg/multilinear.hpp"
#include "boofdeg/rational.hpp"
#include "boofdeg/truth_table.hpp"
#include "boofdeg/univariate.hpp"

namespace boofdeg {

enum class TargetKind { Or, And, Symmetric, Gate };
const char* to_string(TargetKind k);

/// A substitution taking a source function to a named target function.
/// substitute(source, sigma), complemented when output_negated, must equal
/// target on every target input.
struct EmbeddingWitness {
    std::string construction;
    std::string source_id;
    TruthTable source;
    Substitution sigma;
    TargetKind kind = TargetKind::Or;
    int m = 0;
    TruthTable target;
    bool output_negated = false;
    bool verified = false;
    /// FNV-1a 64 of the verification transcript, 16 hex digits.
    std::string digest;

    /// Recomputes the restriction; throws VerificationError on mismatch.
    void verify();
    nlohmann::json to_json() const;
};

// ---------------------------------------------------------------------------
// Polynomial transformations.

/// r = q^2 - p^2 (multilinearized) from an eps-ND polynomial p of f and q of
/// its complement. r <= eps^2 - 1 on 1-inputs and r >= 1 - eps^2 on 0-inputs,
/// so r is negative exactly where f = 1. Invalid p or q raises
/// PreconditionError naming the cube point.
MultilinearPoly sign_rep_from_nd(const MultilinearPoly& p, const MultilinearPoly& q, const TruthTable& f,
                                 const Rational& eps);

struct RationalApprox {
    MultilinearPoly numerator;    // p^2
    MultilinearPoly denominator;  // p^2 + q^2
    Rational max_error;

    Rational evaluate(std::uint64_t x) const;
    int degree() const { return std::max(numerator.degree(), denominator.degree()); }
};

/// p^2 / (p^2 + q^2), checked to be within eps of f at every cube point.
RationalApprox rational_approx_from_nd(const MultilinearPoly& p, const MultilinearPoly& q, const TruthTable& f,
                                       const Rational& eps);

/// Interpolant of k -> average of p(x)^2 over |x| = k, k = 0..n. n <= 12.
UnivariatePoly symmetrize_square(const MultilinearPoly& p);

// ---------------------------------------------------------------------------
// Symmetric profiles.

/// Maximal interval [l0, n - l1] on which the profile is constant and which
/// contains floor(n/2).
struct CentralInterval {
    int l0 = 0;
    int l1 = 0;
};
CentralInterval central_interval(std::span<const std::uint8_t> profile);

struct Exact0Reduction {
    int ell = 0;
    bool d_ell = false;
    int t_max = 0;
    /// (1 - 2 D(ell)) D(t + ell - 1) + D(ell) for t = 0..t_max.
    std::vector<std::uint8_t> values;

    /// The same affine shift applied to a univariate polynomial u in place of D.
    UnivariatePoly apply(const UnivariatePoly& u) const;
};

/// Needs ell >= 1, D(ell) != D(ell - 1) and a transformed profile equal to
/// EXACT_0 on t = 0..min(floor(n/5), n - ell + 1); otherwise PreconditionError.
Exact0Reduction exact0_reduce(std::span<const std::uint8_t> profile, int ell);

/// When l0 = 0 the profile is constant on [0, r] with r = n - l1 < n; fixing
/// all but r + 1 inputs to 0 gives AND_{r+1}, or NAND when D(0) = 1.
EmbeddingWitness exact0_escape(std::span<const std::uint8_t> profile);

// ---------------------------------------------------------------------------
// Restrictions onto OR / AND.

struct MonotoneEmbedding {
    std::optional<EmbeddingWitness> zero_side;  // OR_{s0}
    std::optional<EmbeddingWitness> one_side;   // AND_{s1}
};
/// f must be monotone increasing.
MonotoneEmbedding embed_monotone(const TruthTable& f);

/// Restriction to a minimum-size sensitive block B at x: AND_{|B|}, output
/// negated when f(x) = 1. PreconditionError when x has no sensitive block.
EmbeddingWitness embed_minimal_block(const TruthTable& f, std::uint64_t x);

struct ReadkEmbedding {
    int k = 0;
    int s0 = 0;
    int s1 = 0;
    std::optional<EmbeddingWitness> zero_side;  // OR_{|I|}
    std::optional<EmbeddingWitness> one_side;   // AND_{|I|}
    std::vector<std::pair<int, int>> zero_graph;
    std::vector<std::pair<int, int>> one_graph;
    /// |I| (2k + 1) >= s0 and |I| (k + 1) >= s1.
    bool zero_floor_ok = true;
    bool one_floor_ok = true;

    nlohmann::json to_json() const;
};
/// The DNF must be term- and literal-irredundant.
ReadkEmbedding readk_embed(const DnfFormula& dnf);

struct DisjointTerms {
    std::vector<int> indices;
    /// count * k * beta >= alpha.
    bool bound_ok = true;
};
DisjointTerms disjoint_terms(const DnfFormula& dnf);

/// Max-degree-removal greedy independent set; ties go to the lowest vertex.
std::vector<int> greedy_independent_set(int vertices, const std::vector<std::pair<int, int>>& edges);

// ---------------------------------------------------------------------------
// Hypergraph properties and read-once formulas.

struct HypergraphEmbedding {
    EmbeddingWitness witness;
    bool complemented = false;
    int case_number = 1;
    /// Minimum-edge hypergraph satisfying the (possibly complemented) property.
    std::uint64_t min_hypergraph = 0;
    int m = 0;
    /// Case 2 only.
    int v = -1;
    std::vector<int> i_prime;
    std::vector<std::uint8_t> g_profile;

    nlohmann::json to_json() const;
};
HypergraphEmbedding hypergraph_symmetric_embedding(const PropertySpec& p);

struct GateRestriction {
    EmbeddingWitness witness;
    int gate_node = -1;
    int w = 0;
    int d = 0;
    int n = 0;
    /// w^d > n and w^d >= n.
    bool strict_bound = false;
    bool weak_bound = false;

    nlohmann::json to_json() const;
};
GateRestriction max_branching_restriction(const ReadOnceFormula& f);

}  // namespace boofdeg
