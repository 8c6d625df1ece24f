#include "boofdeg/rational.hpp"

#include <cctype>

#include "boofdeg/error.hpp"

namespace boofdeg {

Rational::Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

mpz_class parse_integer(std::string_view text, std::size_t offset) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) throw ParseError("expected digits", offset + i);
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
            throw ParseError("invalid digit in rational", offset + j);
        }
    }
    mpz_class value(std::string(text.substr(i)), 10);
    return negative ? mpz_class(-value) : value;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, 0));
    mpz_class num = parse_integer(text.substr(0, slash), 0);
    mpz_class den = parse_integer(text.substr(slash + 1), slash + 1);
    if (den == 0) throw ParseError("zero denominator", slash + 1);
    return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rational::to_short_string() const {
    if (is_integer()) return q_.get_num().get_str();
    return to_string();
}

}  // namespace boofdeg
