#include "boofdeg/truth_table.hpp"

#include <algorithm>
#include <string>

#include "boofdeg/error.hpp"

namespace boofdeg {

namespace {

std::size_t word_count(int n) { return n <= 6 ? 1 : (std::size_t{1} << (n - 6)); }

void check_arity(int n) {
    if (n < 0 || n > TruthTable::kMaxVars) {
        throw CapError("truth table arity " + std::to_string(n) + " outside [0, 24]");
    }
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
}

}  // namespace

TruthTable::TruthTable(int n, bool value) : n_(n) {
    check_arity(n);
    words_.assign(word_count(n), value ? ~std::uint64_t{0} : 0);
    if (value && n < 6) words_[0] = (std::uint64_t{1} << size()) - 1;
}

TruthTable TruthTable::from_hex(std::string_view hex, int n) {
    check_arity(n);
    const std::uint64_t bits = std::uint64_t{1} << n;
    const std::size_t digits = static_cast<std::size_t>((bits + 3) / 4);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        if (hex_value(hex[i]) < 0) throw ParseError("invalid hex digit '" + std::string(1, hex[i]) + "'", i);
    }
    if (hex.size() != digits) {
        throw EncodingError("hex table for n=" + std::to_string(n) + " needs " + std::to_string(digits) +
                            " digits, got " + std::to_string(hex.size()));
    }
    TruthTable t(n);
    for (std::size_t i = 0; i < digits; ++i) {
        const int v = hex_value(hex[digits - 1 - i]);
        for (int b = 0; b < 4; ++b) {
            if (!((v >> b) & 1)) continue;
            const std::uint64_t x = 4 * i + b;
            if (x >= bits) throw EncodingError("hex table sets bits above 2^n");
            t.set(x, true);
        }
    }
    return t;
}

TruthTable TruthTable::from_bits(std::span<const std::uint8_t> bits, int n) {
    check_arity(n);
    if (bits.size() != (std::size_t{1} << n)) throw EncodingError("bit list length must be 2^n");
    TruthTable t(n);
    for (std::size_t x = 0; x < bits.size(); ++x) {
        if (bits[x] > 1) throw EncodingError("bit list entries must be 0 or 1");
        t.set(x, bits[x] != 0);
    }
    return t;
}

TruthTable TruthTable::from_word(std::uint64_t word, int n) {
    if (n > 6) throw CapError("from_word requires n <= 6");
    TruthTable t(n);
    t.words_[0] = n == 6 ? word : (word & ((std::uint64_t{1} << t.size()) - 1));
    return t;
}

std::string TruthTable::to_hex() const {
    const std::uint64_t bits = size();
    const std::size_t digits = static_cast<std::size_t>((bits + 3) / 4);
    std::string out(digits, '0');
    static constexpr char kDigits[] = "0123456789ABCDEF";
    for (std::size_t i = 0; i < digits; ++i) {
        int v = 0;
        for (int b = 0; b < 4; ++b) {
            const std::uint64_t x = 4 * i + b;
            if (x < bits && get(x)) v |= 1 << b;
        }
        out[digits - 1 - i] = kDigits[v];
    }
    return out;
}

std::uint64_t TruthTable::count_ones() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(popcount(w));
    return c;
}

bool TruthTable::is_constant() const {
    const std::uint64_t ones = count_ones();
    return ones == 0 || ones == size();
}

std::vector<std::uint8_t> TruthTable::values() const {
    std::vector<std::uint8_t> v(size());
    for (std::uint64_t x = 0; x < size(); ++x) v[x] = get(x) ? 1 : 0;
    return v;
}

std::vector<std::uint64_t> TruthTable::ones() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < size(); ++x)
        if (get(x)) out.push_back(x);
    return out;
}

std::vector<std::uint64_t> TruthTable::zeros() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t x = 0; x < size(); ++x)
        if (!get(x)) out.push_back(x);
    return out;
}

std::strong_ordering operator<=>(const TruthTable& a, const TruthTable& b) {
    if (a.n_ != b.n_) return a.n_ <=> b.n_;
    for (std::size_t i = a.words_.size(); i-- > 0;) {
        if (a.words_[i] != b.words_[i]) return a.words_[i] <=> b.words_[i];
    }
    return std::strong_ordering::equal;
}

TruthTable constant_table(int n, bool value) { return TruthTable(n, value); }

TruthTable variable_table(int n, int i) {
    if (i < 0 || i >= n) throw std::invalid_argument("variable index out of range");
    return TruthTable::from_function(n, [i](std::uint64_t x) { return (x >> i) & 1U; });
}

TruthTable and_table(int n) {
    return TruthTable::from_function(n, [n](std::uint64_t x) { return x == (std::uint64_t{1} << n) - 1; });
}

TruthTable or_table(int n) {
    return TruthTable::from_function(n, [](std::uint64_t x) { return x != 0; });
}

TruthTable nand_table(int n) { return complement(and_table(n)); }
TruthTable nor_table(int n) { return complement(or_table(n)); }

TruthTable xor_table(int n) {
    return TruthTable::from_function(n, [](std::uint64_t x) { return popcount(x) & 1; });
}

TruthTable majority_table(int n) {
    return TruthTable::from_function(n, [n](std::uint64_t x) { return 2 * popcount(x) > n; });
}

TruthTable threshold_table(int n, int t) {
    return TruthTable::from_function(n, [t](std::uint64_t x) { return popcount(x) >= t; });
}

TruthTable exact_table(int n, int k) {
    return TruthTable::from_function(n, [k](std::uint64_t x) { return popcount(x) == k; });
}

TruthTable symmetric_table(std::span<const std::uint8_t> profile) {
    if (profile.empty()) throw std::invalid_argument("symmetric profile must cover weight 0");
    const int n = static_cast<int>(profile.size()) - 1;
    return TruthTable::from_function(n, [&](std::uint64_t x) { return profile[popcount(x)] != 0; });
}

std::uint64_t Substitution::apply(std::uint64_t y) const {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const Literal& a = actions[i];
        bool bit = false;
        switch (a.kind) {
            case Literal::Kind::Zero: bit = false; break;
            case Literal::Kind::One: bit = true; break;
            case Literal::Kind::Var: bit = (y >> a.var) & 1U; break;
            case Literal::Kind::NegVar: bit = !((y >> a.var) & 1U); break;
        }
        if (bit) x |= std::uint64_t{1} << i;
    }
    return x;
}

void Substitution::validate() const {
    if (n_out < 0 || n_out > TruthTable::kMaxVars) throw SubstitutionError("substitution output arity out of range");
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const Literal& a = actions[i];
        if ((a.kind == Literal::Kind::Var || a.kind == Literal::Kind::NegVar) && (a.var < 0 || a.var >= n_out)) {
            throw SubstitutionError("substitution for x_" + std::to_string(i + 1) + " references y_" +
                                    std::to_string(a.var + 1) + " outside [1, " + std::to_string(n_out) + "]");
        }
    }
}

TruthTable substitute(const TruthTable& f, const Substitution& sigma) {
    if (sigma.actions.size() != static_cast<std::size_t>(f.num_vars())) {
        throw SubstitutionError("substitution has " + std::to_string(sigma.actions.size()) +
                                " actions for a function of arity " + std::to_string(f.num_vars()));
    }
    sigma.validate();
    TruthTable g(sigma.n_out);
    for (std::uint64_t y = 0; y < g.size(); ++y) g.set(y, f.get(sigma.apply(y)));
    return g;
}

TruthTable complement(const TruthTable& f) {
    return TruthTable::from_function(f.num_vars(), [&](std::uint64_t x) { return !f.get(x); });
}

std::uint32_t relevant_vars(const TruthTable& f) {
    std::uint32_t mask = 0;
    for (int i = 0; i < f.num_vars(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            if (!(x & bit) && f.get(x) != f.get(x | bit)) {
                mask |= 1U << i;
                break;
            }
        }
    }
    return mask;
}

TruthTable compose_disjoint(const TruthTable& f, std::span<const TruthTable> inner) {
    if (inner.size() != static_cast<std::size_t>(f.num_vars())) {
        throw CompositionError("compose_disjoint: need one inner function per outer variable");
    }
    int total = 0;
    std::vector<int> offset;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const auto& g = inner[i];
        const std::uint32_t full = g.num_vars() == 32 ? ~0U : ((1U << g.num_vars()) - 1);
        if (relevant_vars(g) != full) {
            throw CompositionError("compose_disjoint: inner function " + std::to_string(i + 1) +
                                   " has an irrelevant variable");
        }
        offset.push_back(total);
        total += g.num_vars();
    }
    if (total > TruthTable::kMaxVars) throw CapError("compose_disjoint: composed arity exceeds storage cap");
    return TruthTable::from_function(total, [&](std::uint64_t x) {
        std::uint64_t outer = 0;
        for (std::size_t i = 0; i < inner.size(); ++i) {
            const std::uint64_t block = (x >> offset[i]) & ((std::uint64_t{1} << inner[i].num_vars()) - 1);
            if (inner[i].get(block)) outer |= std::uint64_t{1} << i;
        }
        return f.get(outer);
    });
}

TruthTable restrict_variable(const TruthTable& f, int i, bool value) {
    if (i < 0 || i >= f.num_vars()) throw std::invalid_argument("restrict_variable: index out of range");
    const std::uint64_t low = (std::uint64_t{1} << i) - 1;
    return TruthTable::from_function(f.num_vars() - 1, [&](std::uint64_t y) {
        std::uint64_t x = (y & low) | ((y & ~low) << 1);
        if (value) x |= std::uint64_t{1} << i;
        return f.get(x);
    });
}

}  // namespace boofdeg
