#include "setqm/rational.hpp"

#include <cctype>

#include "setqm/error.hpp"

namespace setqm {

ParseError::ParseError(const std::string& message, std::string text, std::size_t position)
    : std::runtime_error(message), text_(std::move(text)), position_(position) {}

std::string ParseError::annotated() const {
    std::string out = "parse error at position " + std::to_string(position_) + ": " + what();
    out += "\n  " + text_ + "\n  " + std::string(position_, ' ') + "^";
    return out;
}

std::string to_string(const Rational& r) {
    const Integer& num = boost::multiprecision::numerator(r);
    const Integer& den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole, std::size_t offset) {
    std::size_t i = 0;
    bool negative = false;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size()) {
        throw ParseError("expected digits", std::string(whole), offset + i);
    }
    Integer value = 0;
    for (; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ParseError("unexpected character in number", std::string(whole), offset + i);
        }
        value = value * 10 + (text[i] - '0');
    }
    return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text, text, 0));
    }
    Integer num = parse_integer(text.substr(0, slash), text, 0);
    Integer den = parse_integer(text.substr(slash + 1), text, slash + 1);
    if (den == 0) {
        throw ParseError("zero denominator", std::string(text), slash + 1);
    }
    return Rational(num, den);
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) {
        return std::nullopt;
    }
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    const Integer sn = boost::multiprecision::sqrt(num);
    const Integer sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) {
        return std::nullopt;
    }
    return Rational(sn, sd);
}

}  // namespace setqm
