#include "hiz/series.hpp"

#include <sstream>

namespace hiz {

ChiSeries series_multiply_truncate(const ChiSeries& s1, const ChiSeries& s2, int max_total_degree,
                                   std::optional<int> per_edge_cap) {
    if (s1.k() != s2.k()) throw std::invalid_argument("series k mismatch");
    ChiSeries out(s1.k(), max_total_degree);
    for (const auto& [m1, c1] : s1.terms()) {
        if (m1.total_degree() > max_total_degree) continue;
        for (const auto& [m2, c2] : s2.terms()) {
            if (m1.total_degree() + m2.total_degree() > max_total_degree) continue;
            EdgeMonomial m = m1 * m2;
            if (per_edge_cap && m.max_edge_exponent() > *per_edge_cap) continue;
            out.add_coeff(m, c1 * c2);
        }
    }
    return out;
}

ChiSeries series_exp(const ChiSeries& phi, int max_total_degree, std::optional<int> per_edge_cap) {
    if (!phi.coeff(EdgeMonomial()).is_zero())
        throw std::invalid_argument("series_exp needs zero constant term");
    ChiSeries acc = ChiSeries::one(phi.k(), max_total_degree);
    ChiSeries power = ChiSeries::one(phi.k(), max_total_degree);
    Rational factorial(1);
    for (int n = 1; n <= max_total_degree; ++n) {
        power = series_multiply_truncate(power, phi, max_total_degree, per_edge_cap);
        if (power.terms().empty()) break;
        factorial *= n;
        for (const auto& [m, c] : power.terms()) acc.add_coeff(m, c * (Rational(1) / factorial));
    }
    return acc;
}

GaussianRational series_eval(const ChiSeries& s, const SpectralPoint& pt, const Rational& y) {
    if (pt.k() != s.k()) throw std::invalid_argument("series/point k mismatch");
    pt.validate();
    GaussianRational total;
    for (const auto& [m, c] : s.terms()) {
        Rational v = c.eval(y);
        if (v == 0) continue;
        for (const auto& [e, n] : m.exponents()) {
            Rational t = pt.tau(e);
            for (int i = 0; i < n; ++i) v /= t;
        }
        total += times_i_power(GaussianRational(v), m.total_degree());
    }
    return total;
}

nlohmann::json ChiSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_) {
        nlohmann::json edges = nlohmann::json::object();
        for (const auto& [e, n] : m.exponents()) edges[e.str()] = n;
        nlohmann::json coeff = nlohmann::json::array();
        for (const auto& q : c.coefficients()) coeff.push_back(to_string(q));
        terms.push_back({{"edges", edges}, {"coeff_y", coeff}});
    }
    return nlohmann::json{{"k", k_}, {"max_degree", max_degree_}, {"terms", terms}};
}

ChiSeries ChiSeries::from_json(const nlohmann::json& j) {
    ChiSeries s(j.at("k").get<int>(), j.at("max_degree").get<int>());
    for (const auto& t : j.at("terms")) {
        std::map<EdgeIndex, int> m;
        for (const auto& [key, val] : t.at("edges").items()) {
            auto dash = key.find('-');
            if (dash == std::string::npos) throw std::invalid_argument("bad edge key '" + key + "'");
            m[EdgeIndex(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)))] =
                val.get<int>();
        }
        std::vector<Rational> coeff;
        for (const auto& c : t.at("coeff_y")) coeff.push_back(parse_rational(c.get<std::string>()));
        s.set_coeff(EdgeMonomial(std::move(m)), YPolynomial(std::move(coeff)));
    }
    return s;
}

std::string ChiSeries::str(bool vlabels) const {
    if (terms_.empty()) return "0";
    std::vector<EdgeIndex> vorder;
    if (vlabels) vorder = v_label_order(k_);
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {  // map order = (degree, lex)
        int d = m.total_degree();
        // i^d * c: fold the sign of i^d (d mod 4 in {2,3}) into the coefficient
        bool negate = (d % 4 == 2 || d % 4 == 3);
        bool imaginary = (d % 2 == 1);
        YPolynomial eff = negate ? -c : c;
        std::string cs = eff.str();
        bool leading_minus = !cs.empty() && cs[0] == '-';
        if (first) {
            if (leading_minus) {
                out << "-";
                cs = cs.substr(1);
            }
        } else {
            out << (leading_minus ? " - " : " + ");
            if (leading_minus) cs = cs.substr(1);
        }
        first = false;
        bool needs_parens = cs.find(' ') != std::string::npos;
        if (needs_parens) out << "(" << cs << ")";
        else out << cs;
        if (imaginary) out << "*i";
        if (!m.empty()) {
            if (vlabels) {
                // v_i stands for 1/tau, so the monomial is a product of v's
                for (std::size_t i = 0; i < vorder.size(); ++i) {
                    int n = m.exponent(vorder[i]);
                    if (!n) continue;
                    out << "*v" << (i + 1);
                    if (n > 1) out << "^" << n;
                }
            } else {
                bool multi = m.exponents().size() > 1;
                out << "/" << (multi ? "(" : "") << m.str() << (multi ? ")" : "");
            }
        }
    }
    return out.str();
}

} // namespace hiz
