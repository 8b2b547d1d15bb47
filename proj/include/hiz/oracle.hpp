#pragma once

#include "hiz/report.hpp"
#include "hiz/series.hpp"

#include <complex>
#include <vector>

namespace hiz {

enum class Ensemble { orthogonal, unitary, symplectic };  // beta = 1, 2, 4

// Small dense complex matrix, row major.
struct CMatrix {
    int n = 0;
    std::vector<std::complex<double>> a;

    explicit CMatrix(int n_ = 0) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}
    std::complex<double>& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }
};

// One Haar-distributed group element. Unitarity (and the symplectic form for
// beta = 4) is checked per sample to machine tolerance.
struct HaarSample {
    Ensemble ensemble;
    int k = 0;
    CMatrix matrix;  // k x k; 2k x 2k complex for the symplectic embedding
};

HaarSample sample_haar(Ensemble ens, int k, std::mt19937_64& rng);

// Normalized beta=2 closed form: c_k det(e^{i x_a l_b}) / (Delta(x) Delta(l))
// with c_k = prod_{p<k} p! * i^{-k(k-1)/2}, fixed so the value tends to 1 as
// the lambda's tend to zero.
std::complex<double> hciz_unitary_det(const SpectralPoint& pt);

// Monte Carlo mean of e^{i tr Lambda g X g^-1} over Haar samples. For the
// symplectic ensemble X and Lambda embed with doubled eigenvalues and the
// quaternionic trace (tr over 2k x 2k, divided by 2) is used, so the k=1
// integral reduces to e^{i x lambda} exactly.
MCEstimate mc_group_integral(Ensemble ens, const SpectralPoint& pt, std::uint64_t samples,
                             std::uint64_t seed);

// Same Monte Carlo mean with explicit matrix arguments (X need not be
// diagonal); used by the Haar-invariance checks.
MCEstimate mc_exponent_mean(Ensemble ens, const CMatrix& X, const CMatrix& Lambda,
                            std::uint64_t samples, std::uint64_t seed);

// Symmetrized WKB reconstruction, unnormalized:
//   sum_sigma sign(sigma)^{beta/2 mod 2} e^{i sum_a lambda_{sigma(a)} x_a}
//     * series_eval(series, sigma-permuted pt)  /  (Delta(x) Delta(lambda))^{beta/2}
// valid for exact terminating series (even beta).
std::complex<double> reconstruct_full_integral(const ChiSeries& series, const Rational& y,
                                               const SpectralPoint& pt);

// Floating-point mirror of the exact pde_apply; returns |residual|.
double pde_residual_numeric(const ChiSeries& series, const Rational& y, const SpectralPoint& pt);

} // namespace hiz
