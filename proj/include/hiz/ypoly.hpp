#pragma once

#include "hiz/rational.hpp"

#include <initializer_list>
#include <vector>

namespace hiz {

// Polynomial in the symmetry variable y with exact rational coefficients,
// stored low power first, no trailing zeros (canonical degree).
class YPolynomial {
public:
    YPolynomial() = default;
    explicit YPolynomial(Rational constant) {
        if (constant != 0) coeffs_.push_back(std::move(constant));
    }
    YPolynomial(std::initializer_list<Rational> cs) : coeffs_(cs) { trim(); }
    explicit YPolynomial(std::vector<Rational> cs) : coeffs_(std::move(cs)) { trim(); }

    static YPolynomial zero() { return YPolynomial(); }
    static YPolynomial one() { return YPolynomial(Rational(1)); }
    // c * y^p
    static YPolynomial monomial(Rational c, int power) {
        YPolynomial p;
        if (c == 0) return p;
        p.coeffs_.assign(power + 1, Rational(0));
        p.coeffs_[power] = std::move(c);
        return p;
    }

    bool is_zero() const { return coeffs_.empty(); }
    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coeff(int power) const {
        if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[power];
    }
    bool is_constant() const { return coeffs_.size() <= 1; }

    Rational eval(const Rational& y) const {
        Rational acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * y + *it;
        return acc;
    }

    YPolynomial operator+(const YPolynomial& o) const {
        std::vector<Rational> r(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] += o.coeffs_[i];
        return YPolynomial(std::move(r));
    }
    YPolynomial operator-(const YPolynomial& o) const {
        std::vector<Rational> r(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i) r[i] += coeffs_[i];
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) r[i] -= o.coeffs_[i];
        return YPolynomial(std::move(r));
    }
    YPolynomial operator-() const {
        std::vector<Rational> r = coeffs_;
        for (auto& c : r) c = -c;
        return YPolynomial(std::move(r));
    }
    YPolynomial operator*(const YPolynomial& o) const {
        if (is_zero() || o.is_zero()) return YPolynomial();
        std::vector<Rational> r(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
        return YPolynomial(std::move(r));
    }
    YPolynomial operator*(const Rational& s) const {
        if (s == 0) return YPolynomial();
        std::vector<Rational> r = coeffs_;
        for (auto& c : r) c *= s;
        return YPolynomial(std::move(r));
    }
    YPolynomial& operator+=(const YPolynomial& o) { return *this = *this + o; }
    YPolynomial& operator*=(const YPolynomial& o) { return *this = *this * o; }

    bool operator==(const YPolynomial& o) const = default;

    // e.g. "-1/2 + 3*y + y^2"; "0" for the zero polynomial
    std::string str(const std::string& var = "y") const {
        if (coeffs_.empty()) return "0";
        std::string out;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            Rational a = coeffs_[i];
            if (first) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            if (i == 0) {
                out += to_string(a);
            } else {
                if (a != 1) out += to_string(a) + "*";
                out += var;
                if (i > 1) out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

} // namespace hiz
