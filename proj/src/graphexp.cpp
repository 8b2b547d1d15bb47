#include "hiz/graphexp.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace hiz {

Integer complete_weight(int n) {
    if (n < 0) throw std::invalid_argument("n >= 0 required");
    Integer w(1), fact(1);
    for (int l = 1; l <= n; ++l) {
        fact *= l;
        w *= fact;
    }
    return w;
}

Rational deletion_rule_weight(int k, DeletionRule rule) {
    auto C = [](int n) { return Rational(complete_weight(n)); };
    switch (rule) {
        case DeletionRule::one_line:
            if (k < 2) throw std::invalid_argument("one_line needs k >= 2");
            return C(k - 1) * C(k - 1) / C(k - 2);
        case DeletionRule::two_lines_same_point:
            if (k < 4) throw std::invalid_argument("two_lines_same_point needs k >= 4");
            return C(k - 1) * C(k - 2) / C(k - 3);
        case DeletionRule::two_lines_nonadjacent:
            if (k < 4) throw std::invalid_argument("two_lines_nonadjacent needs k >= 4");
            return C(k - 2) * C(k - 2) * C(k - 2) * C(k - 2) * C(k - 4) /
                   (C(k - 3) * C(k - 3) * C(k - 3) * C(k - 3));
    }
    throw std::invalid_argument("unknown deletion rule");
}

namespace {

// splitmix64: decorrelates per-batch seeds derived from one base seed
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

VerificationReport gaussian_weight_check(int n, std::uint64_t mc_samples, std::uint64_t seed) {
    if (n < 1 || n > 4) throw std::invalid_argument("1 <= n <= 4 (desk scale)");
    if (mc_samples < 100) throw std::invalid_argument("too few samples");

    std::uint64_t state = seed;
    std::mt19937_64 rng(splitmix64(state));
    auto normal = [&]() {
        // Box-Muller on explicit uniforms, reproducible across platforms
        double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    };

    double mean = 0.0, m2 = 0.0;
    for (std::uint64_t s = 0; s < mc_samples; ++s) {
        double z[4];
        for (int i = 0; i < n; ++i) z[i] = normal();
        double v = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) v *= (z[i] - z[j]) * (z[i] - z[j]);
        double delta = v - mean;
        mean += delta / static_cast<double>(s + 1);
        m2 += delta * (v - mean);
    }
    double variance = m2 / static_cast<double>(mc_samples - 1);
    double std_error = std::sqrt(variance / static_cast<double>(mc_samples));

    double target = static_cast<double>(complete_weight(n));
    double dist = std_error > 0 ? std::abs(mean - target) / std_error : std::abs(mean - target);

    VerificationReport rep;
    rep.check = "gaussian_weight_check";
    std::ostringstream in;
    in << "n = " << n << ", estimate " << mean << " +- " << std_error << ", target " << target;
    rep.inputs = in.str();
    rep.tolerance = "within 4 standard errors";
    rep.seed = seed;
    rep.samples = mc_samples;
    rep.residual = dist;
    rep.pass = std_error > 0 && dist < 4.0;
    if (std_error <= 0) rep.inputs += " (degenerate error estimate: sample count too small)";
    return rep;
}

ChiSeries beta4_chi(int k, std::uint64_t seed) {
    if (k < 2 || k > 6) throw std::invalid_argument("2 <= k <= 6 supported");
    auto result = solve_chi(k, Rational(4), 1, seed);
    if (!result.gauge.free_monomials.empty())
        throw std::logic_error("beta=4 solve unexpectedly underdetermined");
    // termination contract: constant term 1, integer coefficients, top term C_k
    for (const auto& [m, c] : result.chi.terms()) {
        if (!c.is_constant() || denominator(c.coeff(0)) != 1)
            throw std::logic_error("beta=4 coefficient not an integer");
    }
    EdgeMonomial full;
    for (const auto& e : edges_of(k)) full = full * EdgeMonomial::single(e);
    if (result.chi.coeff(full) != YPolynomial(Rational(complete_weight(k))))
        throw std::logic_error("beta=4 top coefficient differs from the complete-graph weight");
    return result.chi;
}

} // namespace hiz
