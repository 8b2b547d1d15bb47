#pragma once

#include "hiz/edge.hpp"
#include "hiz/rational.hpp"
#include "hiz/spectral.hpp"
#include "hiz/ypoly.hpp"

#include <json.hpp>

#include <map>
#include <optional>

namespace hiz {

// Truncated expansion of chi in the edge variables 1/tau_{ab}.
//
// Phase convention: the stored coefficient of a degree-d monomial is a real
// YPolynomial; the complex value of the term is i^d * coeff(y) * prod 1/tau^n.
// The i^d factor is applied at evaluation and rendering only, which keeps the
// whole algebra over the rationals (degrees add under multiplication, so the
// implicit phases compose correctly).
class ChiSeries {
public:
    ChiSeries() = default;
    ChiSeries(int k, int max_degree) : k_(k), max_degree_(max_degree) {}

    int k() const { return k_; }
    int max_degree() const { return max_degree_; }
    const std::map<EdgeMonomial, YPolynomial>& terms() const { return terms_; }

    YPolynomial coeff(const EdgeMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? YPolynomial() : it->second;
    }
    void set_coeff(const EdgeMonomial& m, YPolynomial c) {
        if (c.is_zero())
            terms_.erase(m);
        else
            terms_[m] = std::move(c);
    }
    void add_coeff(const EdgeMonomial& m, const YPolynomial& c) { set_coeff(m, coeff(m) + c); }

    bool operator==(const ChiSeries& o) const {
        return k_ == o.k_ && terms_ == o.terms_;
    }

    static ChiSeries one(int k, int max_degree) {
        ChiSeries s(k, max_degree);
        s.set_coeff(EdgeMonomial(), YPolynomial::one());
        return s;
    }

    // Evaluate coefficients at a fixed y, drop vanishing terms.
    ChiSeries at_y(const Rational& y) const {
        ChiSeries s(k_, max_degree_);
        for (const auto& [m, c] : terms_) s.set_coeff(m, YPolynomial(c.eval(y)));
        return s;
    }

    nlohmann::json to_json() const;
    static ChiSeries from_json(const nlohmann::json& j);

    // Human-readable sum ordered by (total degree, lex edges). vlabels uses the
    // printed v_1..v_E aliases (k = 3, 4 only).
    std::string str(bool vlabels = false) const;

private:
    int k_ = 0;
    int max_degree_ = 0;
    std::map<EdgeMonomial, YPolynomial> terms_;
};

// Product with truncation: drops monomials of total degree > max_total_degree
// and, when per_edge_cap is set, any monomial with an edge exponent above it.
ChiSeries series_multiply_truncate(const ChiSeries& s1, const ChiSeries& s2, int max_total_degree,
                                   std::optional<int> per_edge_cap);

// exp(phi) for a series with zero constant term, under the same truncation.
ChiSeries series_exp(const ChiSeries& phi, int max_total_degree, std::optional<int> per_edge_cap);

// Exact value: sum over terms of i^deg * coeff(y) * prod (1/tau_ab)^n.
GaussianRational series_eval(const ChiSeries& s, const SpectralPoint& pt, const Rational& y);

} // namespace hiz
