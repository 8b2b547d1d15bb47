#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace hiz {

// Exact arithmetic carriers. GMP keeps rationals canonical: lowest terms,
// positive denominator, zero stored as 0/1.
using Integer  = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// Parse "num", "num/den" or "-num/den"; throws on malformed input or zero denominator.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational '" + s + "': " + e.what());
    }
}

inline std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Sum of numerator and denominator bit lengths; elimination pivot heuristic.
inline std::size_t bit_size(const Rational& q) {
    Integer n = numerator(q) >= 0 ? numerator(q) : Integer(-numerator(q));
    return msb(n + 1) + msb(denominator(q) + 1);
}

// z = re + i*im with exact rational parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
    GaussianRational operator-(const GaussianRational& o) const { return {re - o.re, im - o.im}; }
    GaussianRational operator*(const GaussianRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    GaussianRational operator*(const Rational& s) const { return {re * s, im * s}; }
    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool operator==(const GaussianRational& o) const = default;
};

// z * i^n
inline GaussianRational times_i_power(const GaussianRational& z, int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return z;
        case 1: return {-z.im, z.re};
        case 2: return {-z.re, -z.im};
        default: return {z.im, -z.re};
    }
}

inline std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return to_string(z.re);
    std::string s = to_string(z.re);
    s += (z.im > 0) ? " + " : " - ";
    Rational a = z.im > 0 ? z.im : Rational(-z.im);
    s += to_string(a) + "i";
    return s;
}

} // namespace hiz
