#pragma once

#include "hiz/report.hpp"
#include "hiz/series.hpp"

#include <map>

namespace hiz {

// Symmetric polynomial in the rescaled edge variables v_ab = i y / tau_ab.
using VPolynomial = std::map<EdgeMonomial, Rational>;

// phi0 = 1/2 sum_{a<b} v_ab
VPolynomial phi0(int k);

// phi1 = 1/4 sum_{(abc)} v_ab v_bc v_ca - 1/2 sum v^2 - 1/12 sum v^3
VPolynomial phi1(int k);

// order-1/y^2 term, k=3 only:
// sum V^3 + 1/2 sum V^4 - 1/2 V1V2V3 sum V + 1/20 sum V^5 - 1/8 V1V2V3 sum V^2
VPolynomial phi2_k3();

// chi = exp(phi0 + phi1/y + phi2/y^2 + ...), orders indexed by the power of 1/y.
struct PhiSeries {
    int k = 0;
    std::vector<VPolynomial> orders;
};
PhiSeries phi_series(int k);

std::string vpoly_str(const VPolynomial& p, int k);

// Exact residual of the order-by-order equation at pt (u = x/y):
//   order 0: 2i sum_a l_a d(phi0)/du_a - sum_{a<b} (u_a-u_b)^{-2}
//   order 1: sum_a [ (d phi0)^2 + d^2 phi0 ] + 2i sum_a l_a d(phi1)/du_a
//   order 2: sum_a [ 2 d(phi0) d(phi1) + d^2 phi1 ] + 2i sum_a l_a d(phi2)/du_a
// All derivatives are analytic in the u's; the residual must be exactly zero.
// Orders 0 and 1 accept any k >= 2; order 2 requires k = 3.
VerificationReport phi_order_residual(int order, const SpectralPoint& pt, const Rational& y);

// Expands exp(phi0 + phi1/y + phi2/y^2) over k=3 monomials of tau-degree
// <= max_tau_degree via v_ab = i y / tau_ab and compares, per monomial of
// degree d, the coefficients of y^d, y^{d-1}, y^{d-2} against c_triple.
VerificationReport largey_vs_recursion(int max_tau_degree);

} // namespace hiz
