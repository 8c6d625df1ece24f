#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace boofdeg {

/// Total Boolean function on n inputs stored as 2^n bits.
///
/// Bit i holds f at the input whose integer encoding is i, with x_1 as the
/// least significant bit. The hex form writes this 2^n-bit number most
/// significant digit first, so AND_2 is "8" and OR_2 is "E".
class TruthTable {
public:
    static constexpr int kMaxVars = 24;

    TruthTable() : TruthTable(0, false) {}
    explicit TruthTable(int n, bool value = false);

    /// Accepts [0-9A-Fa-f]; exactly ceil(2^n / 4) digits, unused high bits zero.
    static TruthTable from_hex(std::string_view hex, int n);
    /// One entry per input, each 0 or 1.
    static TruthTable from_bits(std::span<const std::uint8_t> bits, int n);
    static TruthTable from_word(std::uint64_t word, int n);

    template <class Fn>
    static TruthTable from_function(int n, Fn&& fn) {
        TruthTable t(n);
        for (std::uint64_t x = 0; x < t.size(); ++x) t.set(x, static_cast<bool>(fn(x)));
        return t;
    }

    /// Uppercase hex, canonical for from_hex.
    std::string to_hex() const;

    int num_vars() const { return n_; }
    std::uint64_t size() const { return std::uint64_t{1} << n_; }
    std::uint64_t all_ones_input() const { return size() - 1; }

    bool get(std::uint64_t x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
    bool operator[](std::uint64_t x) const { return get(x); }
    void set(std::uint64_t x, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (x & 63);
        if (v) words_[x >> 6] |= mask;
        else words_[x >> 6] &= ~mask;
    }

    std::uint64_t count_ones() const;
    bool is_constant() const;
    /// Low 64 bits of the table; the whole table when n <= 6.
    std::uint64_t word() const { return words_[0]; }
    std::span<const std::uint64_t> words() const { return words_; }
    /// One byte (0/1) per input.
    std::vector<std::uint8_t> values() const;

    std::vector<std::uint64_t> ones() const;
    std::vector<std::uint64_t> zeros() const;

    friend bool operator==(const TruthTable& a, const TruthTable& b) { return a.n_ == b.n_ && a.words_ == b.words_; }
    /// Orders by arity, then by the table read as an unsigned 2^n-bit number.
    friend std::strong_ordering operator<=>(const TruthTable& a, const TruthTable& b);

private:
    int n_;
    std::vector<std::uint64_t> words_;
};

// ---------------------------------------------------------------------------
// Named functions.

TruthTable constant_table(int n, bool value);
TruthTable variable_table(int n, int i);
TruthTable and_table(int n);
TruthTable or_table(int n);
TruthTable nand_table(int n);
TruthTable nor_table(int n);
TruthTable xor_table(int n);
/// Strict majority: 1 iff more than n/2 inputs are 1.
TruthTable majority_table(int n);
/// 1 iff at least t inputs are 1.
TruthTable threshold_table(int n, int t);
/// 1 iff exactly k inputs are 1.
TruthTable exact_table(int n, int k);
/// Symmetric function with f(x) = profile[|x|]; n = profile.size() - 1.
TruthTable symmetric_table(std::span<const std::uint8_t> profile);

// ---------------------------------------------------------------------------
// Substitutions: restriction, identification, permutation, literal negation.

struct Literal {
    enum class Kind : std::uint8_t { Zero, One, Var, NegVar };
    Kind kind = Kind::Zero;
    int var = 0;

    static Literal zero() { return {Kind::Zero, 0}; }
    static Literal one() { return {Kind::One, 0}; }
    static Literal pos(int j) { return {Kind::Var, j}; }
    static Literal neg(int j) { return {Kind::NegVar, j}; }

    friend bool operator==(const Literal&, const Literal&) = default;
};

/// Maps each input variable of a source function to a constant or a
/// (possibly negated) variable of an m-ary target.
struct Substitution {
    int n_out = 0;
    std::vector<Literal> actions;

    /// Image of y under the substitution: the source input x = pi(y).
    std::uint64_t apply(std::uint64_t y) const;
    /// Throws SubstitutionError if a referenced variable is outside [0, n_out).
    void validate() const;
};

/// g(y) = f(pi(y)). Throws SubstitutionError on arity mismatch.
TruthTable substitute(const TruthTable& f, const Substitution& sigma);

TruthTable complement(const TruthTable& f);

/// Bitmask of variables that influence f.
std::uint32_t relevant_vars(const TruthTable& f);

/// h(x^1, ..., x^n) = f(g_1(x^1), ..., g_n(x^n)) with block x^1 in the lowest
/// bits. Every inner function must depend on all of its variables; a violation
/// throws CompositionError.
TruthTable compose_disjoint(const TruthTable& f, std::span<const TruthTable> inner);

/// Restriction to the subcube where variable i is fixed to value; arity n-1.
TruthTable restrict_variable(const TruthTable& f, int i, bool value);

inline int popcount(std::uint64_t x) { return __builtin_popcountll(x); }

}  // namespace boofdeg
