#include <doctest.h>

#include <random>

#include "boofdeg/classify.hpp"
#include "boofdeg/degree.hpp"
#include "boofdeg/error.hpp"

using namespace boofdeg;

namespace {

const Rational kThird(1, 3);
const Rational kQuarter(1, 4);

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Degree of the Moebius expansion computed straight from the definition.
int naive_degree(const TruthTable& f) {
    int best = 0;
    for (std::uint64_t s = 0; s < f.size(); ++s) {
        long c = 0;
        for (std::uint64_t t = 0; t < f.size(); ++t)
            if ((t & ~s) == 0 && f[t]) c += popcount(s ^ t) % 2 ? -1 : 1;
        if (c != 0) best = std::max(best, popcount(s));
    }
    return best;
}

void check_nd_witness(const TruthTable& f, const DegreeWitness& w, const Rational& eps) {
    REQUIRE(w.witness);
    CHECK(w.witness->degree() <= w.value);
    const auto v = w.witness->values();
    for (std::uint64_t x = 0; x < f.size(); ++x) {
        if (f[x]) CHECK(abs(v[x]) >= Rational(1));
        else CHECK(abs(v[x]) <= eps);
    }
}

void check_approx_witness(const TruthTable& f, const DegreeWitness& w, const Rational& eps) {
    REQUIRE(w.witness);
    CHECK(w.witness->degree() <= w.value);
    const auto v = w.witness->values();
    for (std::uint64_t x = 0; x < f.size(); ++x) CHECK(abs(v[x] - Rational(f[x] ? 1 : 0)) <= eps);
}

TruthTable negate_first_input(const TruthTable& f) {
    return TruthTable::from_function(f.num_vars(), [&](std::uint64_t x) { return f[x ^ 1]; });
}

std::vector<std::vector<std::uint8_t>> all_profiles(int n) {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint32_t m = 0; m < (1u << (n + 1)); ++m) {
        std::vector<std::uint8_t> p(n + 1);
        for (int k = 0; k <= n; ++k) p[k] = (m >> k) & 1;
        out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("exact degree examples") {
    const auto a = exact_degree(and_table(2));
    CHECK(a.value == 2);
    CHECK(*a.witness == MultilinearPoly::variable(2, 0) * MultilinearPoly::variable(2, 1));
    const auto x = exact_degree(xor_table(2));
    CHECK(x.value == 2);
    CHECK(x.witness->to_string() == "x1 + x2 - 2*x1*x2");
    const auto z = exact_degree(constant_table(3, false));
    CHECK(z.value == 0);
    CHECK(z.witness->is_zero());
}

TEST_CASE("exact degree matches the subset-sum definition") {
    for (int n = 0; n <= 3; ++n)
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w) {
            const auto f = TruthTable::from_word(w, n);
            const auto d = exact_degree(f);
            CHECK(d.value == naive_degree(f));
            verify_interpolation(f, *d.witness);
        }
}

TEST_CASE("non-deterministic degree") {
    for (int n = 1; n <= 5; ++n) {
        const auto o = ndeg(or_table(n));
        CHECK(o.value == 1);
        const auto v = o.witness->values();
        for (std::uint64_t x = 0; x < v.size(); ++x) CHECK((v[x] != Rational(0)) == or_table(n)[x]);
    }
    CHECK(ndeg(and_table(2)).value == 2);
    CHECK(ndeg(constant_table(2, true)).value == 0);
    for (std::uint64_t w = 0; w < 256; ++w) {
        const auto f = TruthTable::from_word(w, 3);
        CHECK(ndeg(f).value <= exact_degree(f).value);
    }
}

TEST_CASE("sign degree") {
    const auto m = sign_degree(majority_table(3));
    CHECK(m.value == 1);
    verify_sign(majority_table(3), *m.witness);
    CHECK(sign_degree(constant_table(2, true)).value == 0);
    CHECK(sign_degree(xor_table(2)).value == 2);
    CHECK(sign_degree(xor_table(3)).value == 3);
}

TEST_CASE("approximate degree examples") {
    CHECK(approx_degree(variable_table(1, 0), kThird).value == 1);
    const auto a = approx_degree(and_table(2), kThird);
    CHECK(a.value == 1);
    check_approx_witness(and_table(2), a, kThird);
    CHECK(approx_degree(xor_table(2), kThird).value == 2);
    CHECK_THROWS_AS(approx_degree(and_table(2), Rational(1, 2)), PreconditionError);
}

TEST_CASE("approximate non-deterministic degree examples") {
    const auto z = approx_ndeg(constant_table(3, false), kThird);
    CHECK(z.value == 0);
    CHECK(z.witness->is_zero());

    const auto a = approx_ndeg(and_table(2), kThird);
    CHECK(a.value == 1);
    check_nd_witness(and_table(2), a, kThird);

    const auto n2 = approx_ndeg(nor_table(2), kThird);
    CHECK(n2.value == 1);
    check_nd_witness(nor_table(2), n2, kThird);

    const auto n1 = approx_ndeg(nor_table(1), kThird);
    CHECK(n1.value == 1);
    check_nd_witness(nor_table(1), n1, kThird);

    // Three points within 1/4 of zero force |p(11)| <= 3/4 at degree 1.
    CHECK(approx_ndeg(and_table(2), kQuarter).value == 2);
}

TEST_CASE("M measure is NPN invariant") {
    std::mt19937_64 rng(6);
    for (int t = 0; t < 40; ++t) {
        const int n = 1 + static_cast<int>(rng() % 3);
        const auto f = TruthTable::from_function(n, [&](std::uint64_t) { return rng() & 1; });
        const auto canon = npn_canonical(f).canonical;
        const auto a = m_measure(f, kThird), b = m_measure(canon, kThird);
        REQUIRE(a.exact);
        REQUIRE(b.exact);
        CHECK(a.value == b.value);
    }
    const auto o = m_measure(or_table(2), kThird);
    CHECK(o.value == std::max(approx_ndeg(or_table(2), kThird).value, approx_ndeg(nor_table(2), kThird).value));
    CHECK(m_measure(constant_table(2, false), kThird).value == 0);
}

TEST_CASE("witnesses of N_eps and deg_eps verify on every function at n <= 3") {
    for (int n = 0; n <= 3; ++n)
        for (std::uint64_t w = 0; w < (std::uint64_t{1} << (std::uint64_t{1} << n)); ++w) {
            const auto f = TruthTable::from_word(w, n);
            const auto nd = approx_ndeg(f, kThird);
            REQUIRE(nd.exact);
            check_nd_witness(f, nd, kThird);
            const auto ad = approx_degree(f, kQuarter);
            check_approx_witness(f, ad, kQuarter);
            // Rescaling a 1/4-approximator gives a 1/3-ND polynomial.
            CHECK(nd.value <= ad.value);
        }
}

TEST_CASE("symmetric fast paths agree with the general solver") {
    // Negating one input keeps every degree measure but leaves the symmetric path.
    for (int n = 2; n <= 5; ++n) {
        for (const auto& p : all_profiles(n)) {
            const auto f = symmetric_table(p);
            const auto g = negate_first_input(f);
            CAPTURE(f.to_hex());
            if (!symmetric_profile(g)) CHECK(approx_degree(f, kThird).value == approx_degree(g, kThird).value);
            if (n <= 4) {
                ApproxNdegOptions plain;
                plain.symmetric_shortcut = false;
                const auto fast = approx_ndeg(f, kThird);
                CHECK(fast.value == approx_ndeg(f, kThird, plain).value);
                CHECK(fast.value == approx_ndeg(g, kThird).value);
            }
        }
    }
}

TEST_CASE("symmetric bracket contains the exact value") {
    const std::vector<std::uint8_t> maj{0, 0, 1, 1};
    const auto b = symmetric_nd_bounds(maj, kThird);
    const int exact = approx_ndeg(majority_table(3), kThird).value;
    CHECK(b.lower <= exact);
    CHECK(exact <= b.upper);
    CHECK(symmetric_nd_bounds(std::vector<std::uint8_t>{0, 0, 0}, kThird).upper == 0);
    for (int n = 1; n <= 12; ++n) {
        std::vector<std::uint8_t> nor(n + 1, 0);
        nor[0] = 1;
        const auto nb = symmetric_nd_bounds(nor, kThird);
        CHECK(nb.lower <= nb.upper);
        CHECK(meets_nor_reference(nb.upper, n));
    }
}

TEST_CASE("NOR reference bound") {
    CHECK(nor_reference_bound(2) == 1);
    CHECK(nor_reference_bound(8) == 1);
    CHECK(nor_reference_bound(9) == 2);
    CHECK(meets_nor_reference(1, 8));
    CHECK(!meets_nor_reference(1, 9));
}

TEST_CASE("verification rejects bad witnesses") {
    const auto p = MultilinearPoly::constant(2, Rational(1, 2));
    CHECK_THROWS_AS(verify_nd(and_table(2), p), VerificationError);
    CHECK_THROWS_AS(verify_approx(and_table(2), p, kThird), VerificationError);
    CHECK_THROWS_AS(verify_approx_nd(and_table(2), p, kThird), VerificationError);
    CHECK_THROWS_AS(verify_sign(and_table(2), p), VerificationError);
    CHECK_THROWS_AS(verify_interpolation(and_table(2), p), VerificationError);
}
