#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "boofdeg/combinatorial.hpp"

using namespace boofdeg;

namespace {

bool sensitive_block(const TruthTable& f, std::uint64_t x, std::uint64_t b) { return f[x] != f[x ^ b]; }

int brute_bs(const TruthTable& f, std::uint64_t x) {
    const std::uint64_t full = f.all_ones_input();
    std::function<int(std::uint64_t)> go = [&](std::uint64_t used) {
        int best = 0;
        const std::uint64_t free = full & ~used;
        for (std::uint64_t b = free; b; b = (b - 1) & free)
            if (sensitive_block(f, x, b)) best = std::max(best, 1 + go(used | b));
        return best;
    };
    return go(0);
}

int brute_cert(const TruthTable& f, std::uint64_t x) {
    int best = f.num_vars();
    for (std::uint64_t s = 0; s < f.size(); ++s) {
        bool forced = true;
        for (std::uint64_t y = 0; y < f.size() && forced; ++y)
            if (((y ^ x) & s) == 0 && f[y] != f[x]) forced = false;
        if (forced) best = std::min(best, popcount(s));
    }
    return best;
}

// Minimax over restrictions, memoized on (fixed mask, values).
int brute_depth(const TruthTable& f) {
    const int n = f.num_vars();
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> memo;
    std::function<int(std::uint64_t, std::uint64_t)> go = [&](std::uint64_t fixed, std::uint64_t vals) {
        auto key = std::make_pair(fixed, vals);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool seen[2] = {false, false};
        for (std::uint64_t y = 0; y < f.size(); ++y)
            if ((y & fixed) == vals) seen[f[y]] = true;
        int best = 0;
        if (seen[0] && seen[1]) {
            best = n + 1;
            for (int i = 0; i < n; ++i) {
                const std::uint64_t b = std::uint64_t{1} << i;
                if (fixed & b) continue;
                best = std::min(best, 1 + std::max(go(fixed | b, vals), go(fixed | b, vals | b)));
            }
        }
        return memo[key] = best;
    };
    return go(0, 0);
}

}  // namespace

TEST_CASE("combinatorial measure examples") {
    const auto o = combinatorial_profile(or_table(3));
    CHECK(o.s() == 3);
    CHECK(o.s0.value == 3);
    CHECK(o.s0.input == 0);
    CHECK(o.bs() == 3);
    CHECK(o.c0.value == 3);
    CHECK(o.c1.value == 1);

    const auto x = combinatorial_profile(xor_table(2));
    CHECK(x.s() == 2);
    CHECK(x.bs() == 2);
    CHECK(x.c0.value == 2);
    CHECK(x.c1.value == 2);

    const auto a = combinatorial_profile(and_table(2));
    CHECK(a.s0.value == 1);
    CHECK(a.s1.value == 2);
    CHECK(a.c0.value == 1);
    CHECK(a.c1.value == 2);
}

TEST_CASE("combinatorial measures match brute force at n <= 3 and random n = 4") {
    std::vector<TruthTable> fs;
    for (int n = 0; n <= 3; ++n)
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w)
            fs.push_back(TruthTable::from_word(w, n));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 60; ++t) fs.push_back(TruthTable::from_word(rng() & 0xFFFF, 4));

    for (const auto& f : fs) {
        const auto p = combinatorial_profile(f);
        int s[2] = {0, 0}, bs[2] = {0, 0}, c[2] = {0, 0};
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            const int side = f[x];
            s[side] = std::max(s[side], popcount(sensitive_coordinates(f, x)));
            bs[side] = std::max(bs[side], brute_bs(f, x));
            c[side] = std::max(c[side], brute_cert(f, x));
        }
        CAPTURE(f.to_hex());
        CHECK(p.s0.value == s[0]);
        CHECK(p.s1.value == s[1]);
        REQUIRE(p.has_bs);
        CHECK(p.bs0.value == bs[0]);
        CHECK(p.bs1.value == bs[1]);
        CHECK(p.c0.value == c[0]);
        CHECK(p.c1.value == c[1]);

        // Witnesses are genuine.
        const auto blocks = block_sensitivity_at(f, p.bs1.input);
        std::uint64_t used = 0;
        for (auto b : blocks.blocks) {
            CHECK((used & b) == 0);
            CHECK(sensitive_block(f, p.bs1.input, b));
            used |= b;
        }
        const auto cert = certificate_at(f, p.c0.input);
        for (std::uint64_t y = 0; y < f.size(); ++y)
            if (((y ^ cert.input) & cert.fixed) == 0) CHECK(f[y] == f[cert.input]);
    }
}

TEST_CASE("decision tree depth") {
    for (int n = 1; n <= 5; ++n) CHECK(decision_tree_depth(xor_table(n)).depth == n);
    CHECK(decision_tree_depth(constant_table(3, true)).depth == 0);
    CHECK(decision_tree_depth(majority_table(3)).depth == 3);

    std::mt19937_64 rng(10);
    for (int t = 0; t < 80; ++t) {
        const int n = static_cast<int>(rng() % 5);
        const auto f = TruthTable::from_function(n, [&](std::uint64_t) { return rng() & 1; });
        const auto r = decision_tree_depth(f);
        CHECK(r.depth == brute_depth(f));
        CHECK(r.tree.depth() == r.depth);
        for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(r.tree.evaluate(x) == f[x]);
    }
}

TEST_CASE("sensitivity table agrees with pointwise sensitivity") {
    const auto f = majority_table(5);
    const auto t = sensitivity_table(f);
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(t[x] == popcount(sensitive_coordinates(f, x)));
}
