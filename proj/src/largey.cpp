#include "hiz/largey.hpp"

#include "hiz/recursion3.hpp"

#include <sstream>

namespace hiz {

namespace {

void add_term(VPolynomial& p, EdgeMonomial m, const Rational& c) {
    auto it = p.find(m);
    if (it == p.end()) {
        if (c != 0) p.emplace(std::move(m), c);
    } else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

} // namespace

VPolynomial phi0(int k) {
    if (k < 2) throw std::invalid_argument("k >= 2 required");
    VPolynomial p;
    for (const auto& e : edges_of(k)) add_term(p, EdgeMonomial::single(e), Rational(1, 2));
    return p;
}

VPolynomial phi1(int k) {
    if (k < 2) throw std::invalid_argument("k >= 2 required");
    VPolynomial p;
    for (int a = 1; a <= k; ++a)
        for (int b = a + 1; b <= k; ++b)
            for (int c = b + 1; c <= k; ++c) {
                EdgeMonomial tri = EdgeMonomial::single(EdgeIndex(a, b)) *
                                   EdgeMonomial::single(EdgeIndex(b, c)) *
                                   EdgeMonomial::single(EdgeIndex(a, c));
                add_term(p, std::move(tri), Rational(1, 4));
            }
    for (const auto& e : edges_of(k)) {
        add_term(p, EdgeMonomial::single(e, 2), Rational(-1, 2));
        add_term(p, EdgeMonomial::single(e, 3), Rational(-1, 12));
    }
    return p;
}

VPolynomial phi2_k3() {
    VPolynomial p;
    auto es = edges_of(3);
    EdgeMonomial vvv;
    for (const auto& e : es) vvv = vvv * EdgeMonomial::single(e);
    for (const auto& e : es) {
        add_term(p, EdgeMonomial::single(e, 3), Rational(1));
        add_term(p, EdgeMonomial::single(e, 4), Rational(1, 2));
        add_term(p, EdgeMonomial::single(e, 5), Rational(1, 20));
        add_term(p, vvv * EdgeMonomial::single(e), Rational(-1, 2));
        add_term(p, vvv * EdgeMonomial::single(e, 2), Rational(-1, 8));
    }
    return p;
}

PhiSeries phi_series(int k) {
    PhiSeries s;
    s.k = k;
    s.orders.push_back(phi0(k));
    s.orders.push_back(phi1(k));
    if (k == 3) s.orders.push_back(phi2_k3());
    return s;
}

std::string vpoly_str(const VPolynomial& p, int k) {
    if (p.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : p) {
        Rational a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        if (a != 1 || m.empty()) out << to_string(a);
        bool started = (a != 1 || m.empty());
        for (const auto& [e, n] : m.exponents()) {
            if (started) out << "*";
            out << "v" << e.a << e.b;
            if (n > 1) out << "^" << n;
            started = true;
        }
    }
    return out.str();
}

namespace {

// exact evaluation machinery at a point in u-space
struct VPointData {
    int k;
    std::vector<EdgeIndex> es;
    std::vector<GaussianRational> v;      // v_e = i w_e, purely imaginary
    std::vector<Rational> lam;

    VPointData(const std::vector<Rational>& u, const std::vector<Rational>& l, int k_) : k(k_) {
        es = edges_of(k);
        for (const auto& e : es) {
            Rational du = u[e.a - 1] - u[e.b - 1];
            Rational dl = l[e.a - 1] - l[e.b - 1];
            v.push_back(GaussianRational(Rational(0), Rational(1) / (dl * du)));
            lam.push_back(dl);
        }
    }

    GaussianRational mono_value(const EdgeMonomial& m) const {
        GaussianRational g(Rational(1));
        for (const auto& [e, n] : m.exponents()) {
            const auto& ve = v[edge_rank(e, k)];
            for (int i = 0; i < n; ++i) g = g * ve;
        }
        return g;
    }

    int sig(const EdgeIndex& e, int c) const { return (c == e.a) - (c == e.b); }

    // d/du_c of v^M = v^M * sum_e m_e i lam_e sig_ec v_e
    GaussianRational mono_d(const EdgeMonomial& m, int c) const {
        GaussianRational t;
        for (const auto& [e, n] : m.exponents()) {
            int s = sig(e, c);
            if (!s) continue;
            std::size_t r = edge_rank(e, k);
            t += times_i_power(v[r] * (lam[r] * Rational(n * s)), 1);
        }
        return mono_value(m) * t;
    }

    // d^2/du_c^2 of v^M = v^M * (T^2 + dT), dT = -sum_e m_e lam_e^2 sig^2 v_e^2
    GaussianRational mono_d2(const EdgeMonomial& m, int c) const {
        GaussianRational t, dt;
        for (const auto& [e, n] : m.exponents()) {
            int s = sig(e, c);
            if (!s) continue;
            std::size_t r = edge_rank(e, k);
            t += times_i_power(v[r] * (lam[r] * Rational(n * s)), 1);
            dt += (v[r] * v[r]) * (-lam[r] * lam[r] * Rational(n * s * s));
        }
        return mono_value(m) * (t * t + dt);
    }

    GaussianRational poly_d(const VPolynomial& p, int c) const {
        GaussianRational s;
        for (const auto& [m, q] : p) s += mono_d(m, c) * q;
        return s;
    }
    GaussianRational poly_d2(const VPolynomial& p, int c) const {
        GaussianRational s;
        for (const auto& [m, q] : p) s += mono_d2(m, c) * q;
        return s;
    }
};

} // namespace

VerificationReport phi_order_residual(int order, const SpectralPoint& pt, const Rational& y) {
    pt.validate();
    if (order < 0 || order > 2) throw std::invalid_argument("order in {0,1,2}");
    if (order == 2 && pt.k() != 3) throw std::invalid_argument("order 2 is k=3 only");
    if (y == 0) throw std::invalid_argument("y must be nonzero for u = x/y");
    const int k = pt.k();
    std::vector<Rational> u(pt.x.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = pt.x[i] / y;
    VPointData pd(u, pt.lambda, k);

    GaussianRational res;
    if (order == 0) {
        auto p0 = phi0(k);
        GaussianRational drift;
        for (int c = 1; c <= k; ++c) drift += pd.poly_d(p0, c) * pt.lambda[c - 1];
        res = times_i_power(drift, 1) * Rational(2);
        for (const auto& e : edges_of(k)) {
            Rational du = u[e.a - 1] - u[e.b - 1];
            res += GaussianRational(Rational(-1) / (du * du));
        }
    } else if (order == 1) {
        auto p0 = phi0(k);
        auto p1 = phi1(k);
        for (int c = 1; c <= k; ++c) {
            GaussianRational d0 = pd.poly_d(p0, c);
            res += d0 * d0 + pd.poly_d2(p0, c);
            res += times_i_power(pd.poly_d(p1, c) * pt.lambda[c - 1], 1) * Rational(2);
        }
    } else {
        auto p0 = phi0(k);
        auto p1 = phi1(k);
        auto p2 = phi2_k3();
        for (int c = 1; c <= k; ++c) {
            res += pd.poly_d(p0, c) * pd.poly_d(p1, c) * Rational(2) + pd.poly_d2(p1, c);
            res += times_i_power(pd.poly_d(p2, c) * pt.lambda[c - 1], 1) * Rational(2);
        }
    }

    VerificationReport rep;
    rep.check = "phi_order_residual";
    rep.inputs = "order " + std::to_string(order) + ", k = " + std::to_string(k) +
                 ", y = " + to_string(y);
    rep.tolerance = "exact zero";
    rep.exact_zero = res.is_zero();
    rep.pass = rep.exact_zero;
    rep.residual_exact = to_string(res);
    return rep;
}

VerificationReport largey_vs_recursion(int max_tau_degree) {
    if (max_tau_degree < 1 || max_tau_degree > 5)
        throw std::invalid_argument("max_tau_degree in 1..5 (desk scale)");

    // series over k=3 v-monomials with coefficients polynomial in w = 1/y,
    // truncated at v-degree <= max_tau_degree and w-degree <= 2 (orders with
    // w^3 and beyond would need phi3)
    using WSeries = std::map<EdgeMonomial, YPolynomial>;
    auto multiply = [&](const WSeries& a, const WSeries& b) {
        WSeries out;
        for (const auto& [m1, c1] : a)
            for (const auto& [m2, c2] : b) {
                if (m1.total_degree() + m2.total_degree() > max_tau_degree) continue;
                YPolynomial prod = c1 * c2;
                // drop w^3 and beyond
                std::vector<Rational> kept;
                for (int p = 0; p <= std::min(2, prod.degree()); ++p) kept.push_back(prod.coeff(p));
                YPolynomial t{std::move(kept)};
                if (t.is_zero()) continue;
                auto key = m1 * m2;
                auto it = out.find(key);
                if (it == out.end())
                    out.emplace(std::move(key), std::move(t));
                else {
                    it->second += t;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        return out;
    };

    WSeries phi;
    auto absorb = [&](const VPolynomial& p, int wpow) {
        for (const auto& [m, c] : p) {
            if (m.total_degree() > max_tau_degree) continue;
            auto it = phi.find(m);
            YPolynomial add = YPolynomial::monomial(c, wpow);
            if (it == phi.end())
                phi.emplace(m, std::move(add));
            else
                it->second += add;
        }
    };
    absorb(phi0(3), 0);
    absorb(phi1(3), 1);
    absorb(phi2_k3(), 2);

    WSeries expphi{{EdgeMonomial(), YPolynomial::one()}};
    WSeries power = expphi;
    Rational factorial(1);
    for (int n = 1; n <= max_tau_degree; ++n) {
        power = multiply(power, phi);
        if (power.empty()) break;
        factorial *= n;
        for (const auto& [m, c] : power) {
            YPolynomial add = c * (Rational(1) / factorial);
            auto it = expphi.find(m);
            if (it == expphi.end())
                expphi.emplace(m, std::move(add));
            else
                it->second += add;
        }
    }

    // compare: v^M = (iy)^d / tau^M, so the stored tau-coefficient polynomial is
    // p_M(y) = sum_s e_{M,s} y^{d-s}; match powers y^d, y^{d-1}, y^{d-2} of c_triple
    int mismatches = 0, checked = 0;
    std::ostringstream detail;
    EdgeIndex e12(1, 2), e13(1, 3), e23(2, 3);
    for (int d = 1; d <= max_tau_degree; ++d)
        for (const auto& m : monomials_of_degree(3, d, d)) {
            int n = m.exponent(e12), mm = m.exponent(e23), r = m.exponent(e13);
            YPolynomial target = c_triple(n, mm, r);
            auto it = expphi.find(m);
            YPolynomial got = (it == expphi.end()) ? YPolynomial() : it->second;
            for (int s = 0; s <= std::min(2, d); ++s) {
                ++checked;
                if (got.coeff(s) != target.coeff(d - s)) {
                    ++mismatches;
                    if (mismatches < 5)
                        detail << " [" << n << "," << mm << "," << r << " s=" << s << "]";
                }
            }
        }

    VerificationReport rep;
    rep.check = "largey_vs_recursion";
    rep.inputs = "tau degree <= " + std::to_string(max_tau_degree) + ", " +
                 std::to_string(checked) + " coefficient comparisons" + detail.str();
    rep.tolerance = "exact match of the three leading powers of y per monomial";
    rep.pass = (mismatches == 0);
    rep.exact_zero = rep.pass;
    rep.residual = mismatches;
    return rep;
}

} // namespace hiz
