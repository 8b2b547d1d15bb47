#pragma once

#include "hiz/edge.hpp"
#include "hiz/rational.hpp"

#include <random>
#include <stdexcept>
#include <vector>

namespace hiz {

// Evaluation substrate: k exact x's and k exact lambda's, pairwise distinct
// within each list so every tau_{ab} is nonzero.
struct SpectralPoint {
    std::vector<Rational> x;
    std::vector<Rational> lambda;

    SpectralPoint() = default;
    SpectralPoint(std::vector<Rational> xs, std::vector<Rational> ls)
        : x(std::move(xs)), lambda(std::move(ls)) {
        validate();
    }

    int k() const { return static_cast<int>(x.size()); }

    void validate() const {
        if (x.size() != lambda.size() || x.empty())
            throw std::invalid_argument("SpectralPoint needs equal-length nonempty x and lambda");
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = i + 1; j < x.size(); ++j) {
                if (x[i] == x[j]) throw std::invalid_argument("coincident x eigenvalues");
                if (lambda[i] == lambda[j]) throw std::invalid_argument("coincident lambda eigenvalues");
            }
    }

    Rational tau(const EdgeIndex& e) const {
        return (lambda[e.a - 1] - lambda[e.b - 1]) * (x[e.a - 1] - x[e.b - 1]);
    }
    Rational lambda_diff(const EdgeIndex& e) const { return lambda[e.a - 1] - lambda[e.b - 1]; }
    Rational x_diff(const EdgeIndex& e) const { return x[e.a - 1] - x[e.b - 1]; }

    SpectralPoint permuted_lambda(const std::vector<int>& perm) const {
        // pairs x_a with lambda_{perm(a)}
        std::vector<Rational> lp(lambda.size());
        for (std::size_t a = 0; a < lambda.size(); ++a) lp[a] = lambda[perm[a]];
        SpectralPoint p;
        p.x = x;
        p.lambda = std::move(lp);
        return p;
    }
};

// Integer spectra in [-20, 20] with coincidences rejected.
inline SpectralPoint random_spectral_point(int k, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-20, 20);
    auto draw = [&]() {
        std::vector<Rational> v;
        while (static_cast<int>(v.size()) < k) {
            Rational c(dist(rng));
            bool dup = false;
            for (const auto& w : v) dup |= (w == c);
            if (!dup) v.push_back(c);
        }
        return v;
    };
    SpectralPoint p;
    p.x = draw();
    p.lambda = draw();
    return p;
}

} // namespace hiz
