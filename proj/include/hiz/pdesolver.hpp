#pragma once

#include "hiz/report.hpp"
#include "hiz/series.hpp"

#include <cstdint>
#include <vector>

namespace hiz {

// Exact value of [sum_a d^2/dx_a^2 + 2i sum_a lambda_a d/dx_a
//                 - y sum_{a<b} (x_a - x_b)^{-2}] applied to s, at pt.
GaussianRational pde_apply(const ChiSeries& s, const SpectralPoint& pt, const Rational& y);

// Monomials whose coefficients were left free by the linear solve (cubic-identity
// gauge directions) and fixed to zero; identity_count = number of free directions.
struct GaugeReport {
    std::vector<EdgeMonomial> free_monomials;
    int identity_count = 0;

    nlohmann::json to_json() const {
        nlohmann::json free = nlohmann::json::array();
        for (const auto& m : free_monomials) {
            nlohmann::json edges = nlohmann::json::object();
            for (const auto& [e, n] : m.exponents()) edges[e.str()] = n;
            free.push_back(edges);
        }
        return nlohmann::json{{"free_monomials", free}, {"identity_count", identity_count}};
    }
};

// One degree level of the collocation system: the PDE residual at each sampled
// point, graded by scaling of the lambda's, gives one exact linear equation per
// level relating the level's unknown coefficients to the level below.
struct ResidualSystem {
    int k = 0;
    Rational y;
    int level = 0;                        // degree of the unknown monomials
    std::vector<EdgeMonomial> unknowns;   // ascending (degree, lex) order
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::uint64_t seed = 0;               // seed for the points behind the rows
};

struct SolveResult {
    ChiSeries chi;
    GaugeReport gauge;
    std::uint64_t seed = 0;
};

// Determine the terminating chi for even beta (y = beta(beta/2 - 1),
// per_edge_cap = beta/2 - 1) by exact collocation, degree level by degree
// level. Free directions are fixed by zeroing the lexicographically-largest
// non-pivot monomials and recorded in the gauge report.
SolveResult solve_chi(int k, const Rational& y, int per_edge_cap, std::uint64_t seed = 12345);

// The degree-3 polynomial identity obeyed by the six tau variables of any
// quadruple of points; exact zero at every spectral point.
Rational cubic_identity_residual(const SpectralPoint& pt, const std::array<int, 4>& quadruple);

// The 22 monomials of the cubic identity as (exponent over the quadruple's
// six edges in lex order, sign).
std::vector<std::pair<std::array<int, 6>, int>> cubic_identity_terms();

// Gauge relation vectors induced on the coefficient basis: the cubic identity
// of each vertex quadruple, divided by the squared Vandermonde pair product,
// shifted by every monomial factor that keeps all terms within the per-edge
// cap. Entries are the +-1 term signs on stored coefficients.
std::vector<std::map<EdgeMonomial, Rational>> cubic_identity_gauge_vectors(int k, int per_edge_cap);

// Rank of the span of cubic_identity_gauge_vectors: the gauge dimension the
// solver is expected to find at this truncation.
int expected_gauge_dimension(int k, int per_edge_cap);

// k=3 identities (exact zero at every valid point): the quadratic tau identity
// and the three V-variable identities used by the large-y derivation.
std::vector<Rational> id_residuals(const SpectralPoint& pt);

} // namespace hiz
