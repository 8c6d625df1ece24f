#include "boofdeg/univariate.hpp"

namespace boofdeg {

UnivariatePoly::UnivariatePoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

void UnivariatePoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UnivariatePoly UnivariatePoly::from_binomial_basis(const std::vector<Rational>& a) {
    std::vector<Rational> out(a.size());
    // basis[j] = t (t-1) ... (t-j+1) / j!, built incrementally.
    std::vector<Rational> basis{Rational(1)};
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (j > 0) {
            std::vector<Rational> next(basis.size() + 1);
            const Rational shift(static_cast<long>(j - 1));
            const Rational scale(1, static_cast<long>(j));
            for (std::size_t i = 0; i < basis.size(); ++i) {
                next[i + 1] += basis[i] * scale;
                next[i] -= basis[i] * shift * scale;
            }
            basis = std::move(next);
        }
        if (a[j].is_zero()) continue;
        for (std::size_t i = 0; i < basis.size(); ++i) out[i] += a[j] * basis[i];
    }
    return UnivariatePoly(std::move(out));
}

UnivariatePoly UnivariatePoly::interpolate(const std::vector<Rational>& values) {
    // Newton forward differences at nodes 0..m-1 give binomial-basis coefficients.
    std::vector<Rational> diff = values;
    std::vector<Rational> a;
    for (std::size_t j = 0; j < values.size(); ++j) {
        a.push_back(diff[0]);
        for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }
    return from_binomial_basis(a);
}

Rational UnivariatePoly::evaluate(const Rational& t) const {
    Rational acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

nlohmann::json UnivariatePoly::to_json() const {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : c_) j.push_back(c.to_string());
    return j;
}

std::string UnivariatePoly::to_string() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        const bool neg = c_[i].sign() < 0;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        const Rational a = c_[i].abs();
        const std::string power = i == 0 ? "" : (i == 1 ? "t" : "t^" + std::to_string(i));
        if (power.empty()) out += a.to_short_string();
        else if (a == Rational(1)) out += power;
        else out += a.to_short_string() + "*" + power;
    }
    return out;
}

}  // namespace boofdeg
