#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ellab {

/// Exact rational arithmetic on 64-bit integers; enough headroom for the
/// classifier's exponent algebra, where inputs are small fractions.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t num) : n_(num), d_(1) {}
    Rational(std::int64_t num, std::int64_t den) : n_(num), d_(den) { normalize(); }

    /// Accepts "a/b", integers, and finite decimals ("1.5" -> 3/2).
    static Rational parse(const std::string& text);

    std::int64_t num() const { return n_; }
    std::int64_t den() const { return d_; }
    double to_double() const { return static_cast<double>(n_) / static_cast<double>(d_); }

    Rational operator+(const Rational& o) const { return {n_ * o.d_ + o.n_ * d_, d_ * o.d_}; }
    Rational operator-(const Rational& o) const { return {n_ * o.d_ - o.n_ * d_, d_ * o.d_}; }
    Rational operator*(const Rational& o) const { return {n_ * o.n_, d_ * o.d_}; }
    Rational operator/(const Rational& o) const {
        if (o.n_ == 0) throw std::domain_error("Rational: division by zero");
        return {n_ * o.d_, d_ * o.n_};
    }
    Rational operator-() const { return {-n_, d_}; }

    bool operator==(const Rational& o) const { return n_ == o.n_ && d_ == o.d_; }
    bool operator<(const Rational& o) const { return n_ * o.d_ < o.n_ * d_; }
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const {
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    }

private:
    void normalize() {
        if (d_ == 0) throw std::domain_error("Rational: zero denominator");
        if (d_ < 0) {
            n_ = -n_;
            d_ = -d_;
        }
        const std::int64_t g = std::gcd(n_ < 0 ? -n_ : n_, d_);
        if (g > 1) {
            n_ /= g;
            d_ /= g;
        }
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
};

inline Rational Rational::parse(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("Rational::parse: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos)
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string frac = text.substr(dot + 1);
        if (frac.size() > 15) throw std::invalid_argument("Rational::parse: too many decimals");
        std::int64_t den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        const std::int64_t whole = std::stoll(text.substr(0, dot));
        const std::int64_t part = frac.empty() ? 0 : std::stoll(frac);
        const bool neg = text[0] == '-';
        return Rational(whole * den + (neg ? -part : part), den);
    }
    return Rational(std::stoll(text));
}

}  // namespace ellab
