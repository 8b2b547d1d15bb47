#pragma once

#include "hiz/pdesolver.hpp"
#include "hiz/report.hpp"
#include "hiz/series.hpp"

namespace hiz {

// Weight of the complete graph on n points: prod_{l=1..n} l!.
Integer complete_weight(int n);

struct CompleteGraphWeight {
    int n = 0;
    Integer value;
};

enum class DeletionRule { one_line, two_lines_same_point, two_lines_nonadjacent };

// Closed-form weights for the near-complete graphs:
//   one_line:               C_{k-1}^2 / C_{k-2}
//   two_lines_same_point:   C_{k-1} C_{k-2} / C_{k-3}
//   two_lines_nonadjacent:  C_{k-2}^4 C_{k-4} / C_{k-3}^4
Rational deletion_rule_weight(int k, DeletionRule rule);

// Monte Carlo check of the Gaussian-integral representation
//   (2 pi)^{-n/2} int prod_{i<j} (z_i - z_j)^2 e^{-sum z^2 / 2} dz = C_n,
// passing iff the estimate is within 4 standard errors of complete_weight(n).
VerificationReport gaussian_weight_check(int n, std::uint64_t mc_samples, std::uint64_t seed);

// The exact terminating chi for beta = 4 (per-edge exponents at most one),
// computed by the PDE solver; every coefficient is an integer built from the
// complete-graph weights, with i^degree phases applied at evaluation.
ChiSeries beta4_chi(int k, std::uint64_t seed = 12345);

} // namespace hiz
