#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "boofdeg/classify.hpp"
#include "boofdeg/error.hpp"
#include "boofdeg/truth_table.hpp"

using namespace boofdeg;

namespace {

TruthTable random_table(std::mt19937_64& rng, int n) {
    return TruthTable::from_function(n, [&](std::uint64_t) { return rng() & 1; });
}

bool bit(std::uint64_t x, int i) { return (x >> i) & 1; }

// Alternation counts along every maximal chain 0^n -> 1^n.
std::pair<int, int> chain_alternation(const TruthTable& f) {
    const int n = f.num_vars();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    int hi = 0, lo = 1 << 30;
    do {
        std::uint64_t x = 0;
        int changes = 0;
        for (int i : order) {
            const std::uint64_t y = x | (std::uint64_t{1} << i);
            changes += f[x] != f[y];
            x = y;
        }
        hi = std::max(hi, changes);
        lo = std::min(lo, changes);
    } while (std::next_permutation(order.begin(), order.end()));
    return {hi, n == 0 ? 0 : lo};
}

}  // namespace

TEST_CASE("hex decoding puts x1 in the low bit") {
    const auto a = TruthTable::from_hex("8", 2);
    CHECK(a == and_table(2));
    CHECK(a.ones() == std::vector<std::uint64_t>{3});
    CHECK(TruthTable::from_hex("E", 2) == or_table(2));
    CHECK(TruthTable::from_hex("e", 2) == or_table(2));
    CHECK(TruthTable::from_hex("6", 2) == xor_table(2));
    CHECK(TruthTable::from_hex("6", 2).ones() == std::vector<std::uint64_t>{1, 2});
    CHECK(TruthTable::from_hex("E8", 3) == majority_table(3));
    CHECK(TruthTable::from_hex("1", 0).count_ones() == 1);
}

TEST_CASE("hex decoding rejects malformed input") {
    CHECK_THROWS_AS(TruthTable::from_hex("G", 2), ParseError);
    CHECK_THROWS_AS(TruthTable::from_hex("88", 2), EncodingError);
    CHECK_THROWS_AS(TruthTable::from_hex("4", 1), EncodingError);
    CHECK_THROWS_AS(TruthTable::from_hex("", 2), std::exception);
}

TEST_CASE("hex round-trips for random tables") {
    std::mt19937_64 rng(7);
    for (int n = 0; n <= 9; ++n) {
        for (int t = 0; t < 20; ++t) {
            const auto f = random_table(rng, n);
            CHECK(TruthTable::from_hex(f.to_hex(), n) == f);
        }
    }
}

TEST_CASE("named functions agree with their definitions") {
    for (int n = 1; n <= 6; ++n) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const int w = popcount(x);
            CHECK(and_table(n)[x] == (w == n));
            CHECK(or_table(n)[x] == (w > 0));
            CHECK(nor_table(n)[x] == (w == 0));
            CHECK(nand_table(n)[x] == (w < n));
            CHECK(xor_table(n)[x] == (w % 2 == 1));
            CHECK(majority_table(n)[x] == (2 * w > n));
            CHECK(threshold_table(n, 2)[x] == (w >= 2));
            CHECK(exact_table(n, 1)[x] == (w == 1));
        }
    }
}

TEST_CASE("substitution examples") {
    // AND_2 with x2 <- 1 is the identity on x1.
    Substitution s{1, {Literal::pos(0), Literal::one()}};
    CHECK(substitute(and_table(2), s) == variable_table(1, 0));
    // Identification of both OR_2 inputs.
    Substitution id{1, {Literal::pos(0), Literal::pos(0)}};
    CHECK(substitute(or_table(2), id) == variable_table(1, 0));
    // XOR_2 with x1 <- !y1.
    Substitution neg{2, {Literal::neg(0), Literal::pos(1)}};
    CHECK(substitute(xor_table(2), neg) == complement(xor_table(2)));

    Substitution bad{1, {Literal::pos(3), Literal::one()}};
    CHECK_THROWS_AS(substitute(and_table(2), bad), SubstitutionError);
    Substitution short_sigma{1, {Literal::pos(0)}};
    CHECK_THROWS_AS(substitute(and_table(2), short_sigma), SubstitutionError);
}

TEST_CASE("substitution agrees with pointwise evaluation") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5), m = 1 + static_cast<int>(rng() % 4);
        const auto f = random_table(rng, n);
        Substitution s{m, {}};
        for (int i = 0; i < n; ++i) {
            switch (rng() % 4) {
                case 0: s.actions.push_back(Literal::zero()); break;
                case 1: s.actions.push_back(Literal::one()); break;
                case 2: s.actions.push_back(Literal::pos(static_cast<int>(rng() % m))); break;
                default: s.actions.push_back(Literal::neg(static_cast<int>(rng() % m))); break;
            }
        }
        const auto g = substitute(f, s);
        for (std::uint64_t y = 0; y < g.size(); ++y) {
            std::uint64_t x = 0;
            for (int i = 0; i < n; ++i) {
                const auto& a = s.actions[i];
                bool v = a.kind == Literal::Kind::One;
                if (a.kind == Literal::Kind::Var) v = bit(y, a.var);
                if (a.kind == Literal::Kind::NegVar) v = !bit(y, a.var);
                if (v) x |= std::uint64_t{1} << i;
            }
            REQUIRE(g[y] == f[x]);
        }
    }
}

TEST_CASE("complement is an involution") {
    CHECK(complement(or_table(2)) == nor_table(2));
    CHECK(complement(constant_table(3, false)) == constant_table(3, true));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        const auto f = random_table(rng, static_cast<int>(rng() % 8));
        CHECK(complement(complement(f)) == f);
    }
}

TEST_CASE("disjoint composition") {
    std::vector<TruthTable> ands{and_table(2), and_table(2)};
    const auto h = compose_disjoint(or_table(2), ands);
    CHECK(h == TruthTable::from_function(4, [](std::uint64_t x) { return (x & 3) == 3 || (x & 12) == 12; }));

    std::vector<TruthTable> one{xor_table(3)};
    CHECK(compose_disjoint(variable_table(1, 0), one) == xor_table(3));

    std::vector<TruthTable> lits{variable_table(1, 0), complement(variable_table(1, 0))};
    CHECK(compose_disjoint(xor_table(2), lits) ==
          TruthTable::from_function(2, [](std::uint64_t x) { return bit(x, 0) != !bit(x, 1); }));

    std::vector<TruthTable> degenerate{TruthTable::from_hex("A", 2), and_table(2)};
    CHECK_THROWS_AS(compose_disjoint(or_table(2), degenerate), CompositionError);
}

TEST_CASE("relevant variables and restriction") {
    const auto f = TruthTable::from_function(3, [](std::uint64_t x) { return bit(x, 0) && bit(x, 2); });
    CHECK(relevant_vars(f) == 0b101u);
    CHECK(restrict_variable(f, 0, true) == TruthTable::from_function(2, [](std::uint64_t y) { return bit(y, 1); }));
    CHECK(restrict_variable(f, 2, false).is_constant());
}

TEST_CASE("classification examples") {
    const auto maj = classify(majority_table(3));
    CHECK(maj.monotone == Monotonicity::Increasing);
    REQUIRE(maj.symmetric_profile);
    CHECK(*maj.symmetric_profile == std::vector<std::uint8_t>{0, 0, 1, 1});

    const auto x = classify(xor_table(2));
    CHECK(x.monotone == Monotonicity::None);
    CHECK(!x.unate_orientation);
    CHECK(*x.symmetric_profile == std::vector<std::uint8_t>{0, 1, 0});

    const auto f = TruthTable::from_function(2, [](std::uint64_t x) { return !bit(x, 0) && bit(x, 1); });
    const auto c = classify(f);
    CHECK(c.monotone == Monotonicity::None);
    REQUIRE(c.unate_orientation);
    CHECK(*c.unate_orientation == 0b01u);
    CHECK(!c.symmetric_profile);

    CHECK(classify(nor_table(3)).monotone == Monotonicity::Decreasing);
}

TEST_CASE("unate orientation reconstructs a monotone function") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 4; ++n) {
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); w += 1 + rng() % 97) {
            const auto f = TruthTable::from_word(w, n);
            const auto c = classify(f);
            if (!c.unate_orientation) continue;
            const std::uint32_t a = *c.unate_orientation;
            const auto g = TruthTable::from_function(n, [&](std::uint64_t y) { return f[y ^ a]; });
            CHECK(is_monotone_increasing(g));
        }
    }
}

TEST_CASE("alternation DP matches chain enumeration for every function at n <= 3") {
    for (int n = 0; n <= 3; ++n) {
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w) {
            const auto f = TruthTable::from_word(w, n);
            const auto a = alternation_profile(f);
            const auto [hi, lo] = chain_alternation(f);
            CHECK(a.max_alt == hi);
            CHECK(a.min_alt == lo);
            CHECK(a.is_zebra == (hi == lo));
            const auto between = alternation_between(f, 0, f.all_ones_input());
            CHECK(between.first == hi);
            CHECK(between.second == lo);
        }
    }
}

TEST_CASE("alternation examples") {
    for (int n = 1; n <= 6; ++n) {
        const auto a = alternation_profile(xor_table(n));
        CHECK(a.max_alt == n);
        CHECK(a.min_alt == n);
        CHECK(a.is_zebra);
        const auto m = alternation_profile(majority_table(n));
        CHECK(m.max_alt == 1);
        CHECK(m.is_zebra);
    }
    CHECK_THROWS_AS(alternation_between(and_table(2), 1, 2), std::invalid_argument);
}

TEST_CASE("max and min terms") {
    const auto a = terms(and_table(2));
    CHECK(a.max_terms == std::vector<std::uint64_t>{1, 2});
    CHECK(a.min_terms == std::vector<std::uint64_t>{3});
    const auto o = terms(or_table(2));
    CHECK(o.min_terms == std::vector<std::uint64_t>{1, 2});
    CHECK(o.max_terms == std::vector<std::uint64_t>{0});
    const auto c = terms(constant_table(3, true));
    CHECK(c.max_terms.empty());
    CHECK(c.min_terms.empty());
}

TEST_CASE("NPN canonical form") {
    CHECK(npn_canonical(and_table(2)).canonical == npn_canonical(nand_table(2)).canonical);
    const auto or_not = TruthTable::from_function(2, [](std::uint64_t x) { return bit(x, 0) || !bit(x, 1); });
    CHECK(npn_canonical(or_not).canonical == npn_canonical(or_table(2)).canonical);

    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto f = random_table(rng, n);
        const auto r = npn_canonical(f);
        CHECK(r.transform.apply(r.canonical) == f);
        CHECK(r.canonical <= f);
    }
}

TEST_CASE("NPN class counts agree with a brute-force partition") {
    // Orbit partition computed here from first principles.
    auto count = [](int n) {
        std::set<std::uint64_t> seen;
        int classes = 0;
        const std::uint64_t total = std::uint64_t{1} << (std::uint64_t{1} << n);
        std::vector<int> perm(n);
        for (std::uint64_t w = 0; w < total; ++w) {
            if (seen.count(w)) continue;
            ++classes;
            const auto f = TruthTable::from_word(w, n);
            std::iota(perm.begin(), perm.end(), 0);
            do {
                for (std::uint32_t neg = 0; neg < (1u << n); ++neg) {
                    for (int out = 0; out < 2; ++out) {
                        const auto g = TruthTable::from_function(n, [&](std::uint64_t x) {
                            std::uint64_t y = 0;
                            for (int i = 0; i < n; ++i)
                                if (bit(x, i) != bit(neg, i)) y |= std::uint64_t{1} << perm[i];
                            return f[y] != (out == 1);
                        });
                        seen.insert(g.word());
                    }
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        return classes;
    };
    for (int n = 1; n <= 3; ++n) CHECK(npn_class_representatives(n).size() == static_cast<std::size_t>(count(n)));
    CHECK(npn_class_representatives(2).size() == 4);
    CHECK(npn_class_representatives(3).size() == 14);
    CHECK(npn_class_representatives(4).size() == 222);
}
