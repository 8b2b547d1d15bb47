#pragma once

#include <json.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace hiz {

// Structured outcome of a residual/oracle check.
struct VerificationReport {
    std::string check;
    bool pass = false;
    bool exact_zero = false;             // residual known to be exactly zero
    double residual = 0.0;               // numeric residual magnitude (or sigma distance for MC)
    std::string residual_exact;          // exact residual when available, as text
    std::string tolerance;               // criterion applied, human readable
    std::string inputs;                  // short description of the inputs
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;

    nlohmann::json to_json() const {
        nlohmann::json j{{"check", check},
                         {"pass", pass},
                         {"exact_zero", exact_zero},
                         {"residual", residual},
                         {"tolerance", tolerance},
                         {"inputs", inputs}};
        if (!residual_exact.empty()) j["residual_exact"] = residual_exact;
        if (seed) j["seed"] = *seed;
        if (samples) j["samples"] = *samples;
        return j;
    }
};

// Monte Carlo estimate with a recorded seed.
struct MCEstimate {
    std::complex<double> mean{0.0, 0.0};
    double std_error = 0.0;  // sqrt((Var Re + Var Im)/n)
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const {
        return nlohmann::json{{"mean_re", mean.real()},
                              {"mean_im", mean.imag()},
                              {"std_error", std_error},
                              {"samples", samples},
                              {"seed", seed}};
    }
};

} // namespace hiz
