#include "boofdeg/multilinear.hpp"

#include <algorithm>
#include <sstream>

#include "boofdeg/error.hpp"

namespace boofdeg {

MultilinearPoly MultilinearPoly::constant(int n, const Rational& c) {
    MultilinearPoly p(n);
    p.set(0, c);
    return p;
}

MultilinearPoly MultilinearPoly::variable(int n, int i) {
    MultilinearPoly p(n);
    p.set(1U << i, Rational(1));
    return p;
}

MultilinearPoly MultilinearPoly::interpolate(int n, const std::vector<Rational>& values) {
    const std::size_t size = std::size_t{1} << n;
    if (values.size() != size) throw std::invalid_argument("interpolate: need 2^n values");
    std::vector<mpq_class> a(size);
    for (std::size_t x = 0; x < size; ++x) a[x] = values[x].raw();
    for (int i = 0; i < n; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < size; ++x)
            if (x & bit) a[x] -= a[x ^ bit];
    }
    MultilinearPoly p(n);
    for (std::size_t s = 0; s < size; ++s) {
        if (sgn(a[s]) != 0) p.coeffs_.emplace(static_cast<std::uint32_t>(s), Rational(a[s]));
    }
    return p;
}

Rational MultilinearPoly::coefficient(std::uint32_t monomial) const {
    auto it = coeffs_.find(monomial);
    return it == coeffs_.end() ? Rational() : it->second;
}

void MultilinearPoly::set(std::uint32_t monomial, const Rational& c) {
    if (c.is_zero()) coeffs_.erase(monomial);
    else coeffs_[monomial] = c;
}

void MultilinearPoly::add(std::uint32_t monomial, const Rational& c) { set(monomial, coefficient(monomial) + c); }

int MultilinearPoly::degree() const {
    int d = 0;
    for (const auto& [m, c] : coeffs_) d = std::max(d, __builtin_popcount(m));
    return d;
}

Rational MultilinearPoly::evaluate(std::uint64_t x) const {
    mpq_class acc = 0;
    for (const auto& [m, c] : coeffs_)
        if ((m & x) == m) acc += c.raw();
    return Rational(acc);
}

std::vector<Rational> MultilinearPoly::values() const {
    const std::size_t size = std::size_t{1} << n_;
    std::vector<mpq_class> a(size);
    for (const auto& [m, c] : coeffs_) a[m] = c.raw();
    for (int i = 0; i < n_; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t x = 0; x < size; ++x)
            if (x & bit) a[x] += a[x ^ bit];
    }
    std::vector<Rational> out;
    out.reserve(size);
    for (auto& q : a) out.emplace_back(q);
    return out;
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.coeffs_) add(m, c);
    return *this;
}

MultilinearPoly& MultilinearPoly::operator-=(const MultilinearPoly& o) {
    n_ = std::max(n_, o.n_);
    for (const auto& [m, c] : o.coeffs_) add(m, -c);
    return *this;
}

MultilinearPoly& MultilinearPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [m, v] : coeffs_) v *= c;
    return *this;
}

MultilinearPoly operator*(const MultilinearPoly& a, const MultilinearPoly& b) {
    MultilinearPoly out(std::max(a.n_, b.n_));
    std::map<std::uint32_t, mpq_class> acc;
    for (const auto& [ma, ca] : a.coeffs_)
        for (const auto& [mb, cb] : b.coeffs_) acc[ma | mb] += ca.raw() * cb.raw();
    for (auto& [m, c] : acc)
        if (sgn(c) != 0) out.coeffs_.emplace(m, Rational(c));
    return out;
}

std::string monomial_key(std::uint32_t monomial) {
    std::string key;
    for (int i = 0; i < 32; ++i) {
        if (!(monomial >> i & 1U)) continue;
        if (!key.empty()) key += ',';
        key += std::to_string(i + 1);
    }
    return key;
}

nlohmann::json MultilinearPoly::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [m, c] : coeffs_) j[monomial_key(m)] = c.to_string();
    return j;
}

MultilinearPoly MultilinearPoly::from_json(int n, const nlohmann::json& j) {
    MultilinearPoly p(n);
    for (const auto& [key, value] : j.items()) {
        std::uint32_t m = 0;
        std::stringstream ss(key);
        std::string part;
        while (std::getline(ss, part, ',')) {
            const int v = std::stoi(part);
            if (v < 1 || v > n) throw ParseError("monomial variable out of range: " + key);
            m |= 1U << (v - 1);
        }
        p.add(m, Rational::parse(value.get<std::string>()));
    }
    return p;
}

std::string MultilinearPoly::to_string() const {
    if (coeffs_.empty()) return "0";
    std::vector<std::uint32_t> order;
    for (const auto& [m, c] : coeffs_) order.push_back(m);
    std::stable_sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::string out;
    for (auto m : order) {
        const Rational& c = coeffs_.at(m);
        const bool neg = c.sign() < 0;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        const Rational a = c.abs();
        std::string mono;
        for (int i = 0; i < 32; ++i)
            if (m >> i & 1U) mono += (mono.empty() ? "x" : "*x") + std::to_string(i + 1);
        if (mono.empty()) out += a.to_short_string();
        else if (a == Rational(1)) out += mono;
        else out += a.to_short_string() + "*" + mono;
    }
    return out;
}

std::vector<std::uint32_t> monomials_up_to(int n, int d) {
    std::vector<std::uint32_t> out;
    for (int k = 0; k <= std::min(n, d); ++k) {
        for (std::uint32_t m = 0; m < (1U << n); ++m)
            if (__builtin_popcount(m) == k) out.push_back(m);
    }
    return out;
}

}  // namespace boofdeg
