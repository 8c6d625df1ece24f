#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "boofdeg/rational.hpp"

namespace boofdeg {

/// Real multilinear polynomial on n Boolean variables with exact rational
/// coefficients. Monomials are variable subsets encoded as bitmasks (bit i is
/// x_{i+1}); only nonzero coefficients are stored.
class MultilinearPoly {
public:
    explicit MultilinearPoly(int n = 0) : n_(n) {}

    static MultilinearPoly constant(int n, const Rational& c);
    static MultilinearPoly variable(int n, int i);
    /// Unique multilinear interpolant of the given 2^n values.
    static MultilinearPoly interpolate(int n, const std::vector<Rational>& values);

    int num_vars() const { return n_; }
    const std::map<std::uint32_t, Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(std::uint32_t monomial) const;
    void set(std::uint32_t monomial, const Rational& c);
    void add(std::uint32_t monomial, const Rational& c);

    bool is_zero() const { return coeffs_.empty(); }
    /// Largest monomial size with a nonzero coefficient; 0 for the zero polynomial.
    int degree() const;

    /// Value at the cube point x: sum of c_S over S contained in x.
    Rational evaluate(std::uint64_t x) const;
    /// Values at all 2^n cube points, indexed like a truth table.
    std::vector<Rational> values() const;

    MultilinearPoly& operator+=(const MultilinearPoly& o);
    MultilinearPoly& operator-=(const MultilinearPoly& o);
    MultilinearPoly& operator*=(const Rational& c);
    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }
    friend MultilinearPoly operator*(MultilinearPoly a, const Rational& c) { return a *= c; }
    /// Product reduced with x_i^2 = x_i.
    friend MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b);
    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
        return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
    }

    /// {"": "c/1", "1": "a/b", "1,3": "..."}: 1-based sorted variable lists.
    nlohmann::json to_json() const;
    static MultilinearPoly from_json(int n, const nlohmann::json& j);
    /// Human readable, e.g. "-1/3 + 2/3*x1 + 2/3*x2".
    std::string to_string() const;

private:
    int n_;
    std::map<std::uint32_t, Rational> coeffs_;
};

/// Monomials of size at most d over n variables, ordered by size then mask.
std::vector<std::uint32_t> monomials_up_to(int n, int d);

std::string monomial_key(std::uint32_t monomial);

}  // namespace boofdeg
