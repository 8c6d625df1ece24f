#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "boofdeg/rational.hpp"

namespace boofdeg {

/// Polynomial in one variable t, power basis, exact coefficients. The
/// coefficient list never ends in a zero (the zero polynomial is empty).
class UnivariatePoly {
public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rational> coefficients);

    /// sum_j a[j] * binom(t, j).
    static UnivariatePoly from_binomial_basis(const std::vector<Rational>& a);
    /// Unique polynomial of degree < points.size() through (k, values[k]), k = 0..m-1.
    static UnivariatePoly interpolate(const std::vector<Rational>& values);

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    /// Degree; 0 for the zero polynomial.
    int degree() const { return c_.empty() ? 0 : static_cast<int>(c_.size()) - 1; }
    Rational evaluate(const Rational& t) const;

    friend bool operator==(const UnivariatePoly&, const UnivariatePoly&) = default;

    nlohmann::json to_json() const;
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> c_;
};

}  // namespace boofdeg
