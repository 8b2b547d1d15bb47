#pragma once

#include "hiz/report.hpp"
#include "hiz/series.hpp"

#include <array>
#include <map>
#include <optional>

namespace hiz {

// Two-point (k=2) coefficient: prod_{l=1..n} (-(l-1) + y/(2l)); 1 for n = 0.
YPolynomial c_two_point(int n);

// C_{n,m,0} = C_{n,0,0} * C_{m,0,0}.
YPolynomial c_pair(int n, int m);

// Three-point coefficient from the recursion in the third index, middle index
// held fixed:
//   C_{n,m,r} = C_{n,m,r-1} * ( m(n-r+1)/r - (r-1) + y/(2r) )
//             + sum_{j=2..r} C_{n+j-1,m,r-j} * (m/r) * (n-r+2j-1)
// applied as given, without symmetrizing the arguments. Index symmetry is a
// property the tests verify, not an input.
YPolynomial c_triple_raw(int n, int m, int r);

// c_triple_raw on the descending-sorted triple, memoized by sorted key.
YPolynomial c_triple(int n, int m, int r);

// Memoized table of c_triple values keyed by descending-sorted triples.
class CoefficientTable3 {
public:
    explicit CoefficientTable3(int max_order);
    int max_order() const { return max_order_; }
    const YPolynomial& at(int n, int m, int r) const;
    const std::map<std::array<int, 3>, YPolynomial>& entries() const { return entries_; }

private:
    int max_order_;
    std::map<std::array<int, 3>, YPolynomial> entries_;
};

// k=2 series up to the given order (coefficients c_two_point(n) on tau_12^-n).
ChiSeries chi_k2_symbolic(int max_order);
ChiSeries chi_k2(const Rational& y, int max_order);

// k=3 series: coefficient of 1/(tau12^n tau23^m tau31^r) is c_triple(n,m,r),
// over all n+m+r <= max_order.
ChiSeries chi_k3_symbolic(int max_order);
ChiSeries chi_k3(const Rational& y, int max_order);

// beta=4 compact form: exp(phi) with phi = 2i(sum 1/tau) - 4i/(tau12 tau23 tau13),
// expanded dropping any power of 1/tau_ij above one. Equals chi_k3(4, 3).
ChiSeries chi_k3_beta4_compact();

// Residual of the truncated k=2 series in the reduced ODE
//   2 chi'' + 2i chi' - (y/tau^2) chi = 0        (tau = (l1-l2)(x1-x2)),
// evaluated termwise at pt. For a series truncated at order N the residual is
// exactly the boundary term (2N(N+1) - y) a_N tau^{-(N+2)}; the report records
// both routes and passes iff they agree exactly.
VerificationReport k2_ode_residual(int max_order, const Rational& y, const SpectralPoint& pt);

} // namespace hiz
