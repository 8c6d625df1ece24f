#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "boofdeg/truth_table.hpp"

namespace boofdeg {

enum class Monotonicity { None, Increasing, Decreasing };

const char* to_string(Monotonicity m);

struct ClassReport {
    Monotonicity monotone = Monotonicity::None;
    /// a with f(x) = g(x xor a) for a monotone increasing g; bit i is a_{i+1}.
    /// Only variables relevant to f are oriented; irrelevant ones get 0.
    std::optional<std::uint32_t> unate_orientation;
    /// D with f(x) = D(|x|), entries 0/1, length n+1.
    std::optional<std::vector<std::uint8_t>> symmetric_profile;
    std::uint32_t relevant_vars = 0;

    nlohmann::json to_json(int n) const;
};

ClassReport classify(const TruthTable& f);

bool is_monotone_increasing(const TruthTable& f);
std::optional<std::vector<std::uint8_t>> symmetric_profile(const TruthTable& f);

struct AlternationReport {
    int max_alt = 0;
    int min_alt = 0;
    bool is_zebra = true;
    /// Per-input DP values, present when requested.
    std::vector<int> max_table;
    std::vector<int> min_table;

    nlohmann::json to_json() const;
};

/// DP over the cube from 0^n. Constant functions report 0.
AlternationReport alternation_profile(const TruthTable& f, bool keep_tables = false);

/// Max and min alternation over monotone paths from x up to y (x below y).
/// Throws std::invalid_argument if x is not below y.
std::pair<int, int> alternation_between(const TruthTable& f, std::uint64_t x, std::uint64_t y);

struct Terms {
    std::vector<std::uint64_t> max_terms;
    std::vector<std::uint64_t> min_terms;
};

Terms terms(const TruthTable& f);

/// g(x) = out xor f'(x') with x'_{perm[i]} = x_i xor neg_i: the transform maps
/// the canonical representative back onto f via apply().
struct NpnTransform {
    std::vector<int> perm;
    std::uint32_t input_negation = 0;
    bool output_negation = false;

    /// Table h with h(x) = out xor t(y), y_{perm[i]} = x_i xor neg_i.
    TruthTable apply(const TruthTable& t) const;
};

struct NpnResult {
    TruthTable canonical;
    NpnTransform transform;
};

/// Least table (numeric order) in the NPN orbit of f. n <= 6.
NpnResult npn_canonical(const TruthTable& f);

/// One canonical representative per NPN class of n-ary functions, sorted. n <= 4.
std::vector<TruthTable> npn_class_representatives(int n);

}  // namespace boofdeg
