#include "hiz/cli.hpp"

#include "hiz/graphexp.hpp"
#include "hiz/largey.hpp"
#include "hiz/oracle.hpp"
#include "hiz/pdesolver.hpp"
#include "hiz/recursion3.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace hiz {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadArgs = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("HIZ_SEED")) return std::strtoull(env, nullptr, 10);
    return 12345;
}

std::uint64_t default_samples() {
    if (const char* env = std::getenv("HIZ_SAMPLES")) return std::strtoull(env, nullptr, 10);
    return 100000;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Rational y_from_beta(int beta) { return Rational(beta) * (Rational(beta, 2) - 1); }

int terminating_order(int k, int beta) {
    int cap = beta / 2 - 1;
    return k * (k - 1) / 2 * cap;
}

void print_report_line(const VerificationReport& r) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.check << ": " << r.inputs;
    if (r.exact_zero)
        std::cout << " (exact zero)";
    else if (!r.residual_exact.empty())
        std::cout << " residual " << r.residual_exact;
    else
        std::cout << " residual/sigma " << fmt_double(r.residual);
    std::cout << "\n";
}

SpectralPoint default_point(int k, int variant) {
    // small deterministic spectra, distinct entries
    std::vector<Rational> x, l;
    for (int i = 0; i < k; ++i) {
        x.push_back(Rational(2 * i + (variant ? 1 : 0), 2));
        l.push_back(Rational(i * i + i + (variant ? i : 0) + 1, 1));
    }
    return SpectralPoint(std::move(x), std::move(l));
}

struct ExpandSpec {
    int k = 3;
    int beta = 0;
    std::string y_str;
    int order = -1;
    std::string format = "text";
    std::string labels = "tau";
    std::uint64_t seed = default_seed();
};

int cmd_expand(const ExpandSpec& spec) {
    if (spec.beta == 0 && spec.y_str.empty())
        throw CLI::ValidationError("--beta or --y is required");
    if (spec.beta != 0 && !spec.y_str.empty())
        throw CLI::ValidationError("--beta and --y are mutually exclusive");
    Rational y = spec.beta ? y_from_beta(spec.beta) : parse_rational(spec.y_str);
    bool even_beta = spec.beta != 0 && spec.beta % 2 == 0;

    ChiSeries series;
    nlohmann::json gauge;
    if (spec.k == 2 || spec.k == 3) {
        int order = spec.order;
        if (order < 0) {
            if (!even_beta)
                throw CLI::ValidationError("--order is required for non-even-beta expansions");
            order = terminating_order(spec.k, spec.beta);
        }
        series = (spec.k == 2) ? chi_k2(y, order) : chi_k3(y, order);
    } else {
        if (!even_beta)
            throw CLI::ValidationError("k >= 4 expansions need an even --beta");
        auto result = solve_chi(spec.k, y, spec.beta / 2 - 1, spec.seed);
        series = result.chi;
        gauge = result.gauge.to_json();
        gauge["seed"] = result.seed;
    }

    if (spec.format == "json") {
        nlohmann::json j = series.to_json();
        if (!gauge.is_null()) j["gauge"] = gauge;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << series.str(spec.labels == "v") << "\n";
        if (!gauge.is_null() && gauge["identity_count"].get<int>() > 0)
            std::cout << "# gauge: " << gauge.dump() << "\n";
    }
    return kExitOk;
}

int cmd_verify_identities(int k, int draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    int zeros = 0;
    for (int d = 0; d < draws; ++d) {
        SpectralPoint pt = random_spectral_point(std::max(k, 3), rng);
        if (k >= 4) {
            Rational r = cubic_identity_residual(pt, {1, 2, 3, 4});
            if (r == 0)
                ++zeros;
            else
                ok = false;
        } else {
            auto rs = id_residuals(pt);
            bool all = true;
            for (const auto& r : rs) all &= (r == 0);
            if (all)
                ++zeros;
            else
                ok = false;
        }
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "identities k=" << k << ": " << zeros << "/"
              << draws << " draws exactly zero (seed " << seed << ")\n";
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_verify_pde(int k, int beta, const std::string& series_file, std::uint64_t seed,
                   int points) {
    Rational y = y_from_beta(beta);
    ChiSeries series;
    if (!series_file.empty()) {
        std::ifstream in(series_file);
        if (!in) throw CLI::ValidationError("cannot open " + series_file);
        nlohmann::json j;
        in >> j;
        series = ChiSeries::from_json(j);
    } else if (k == 3) {
        series = chi_k3(y, terminating_order(k, beta));
    } else if (k == 2) {
        series = chi_k2(y, terminating_order(k, beta));
    } else {
        series = solve_chi(k, y, beta / 2 - 1, seed).chi;
    }
    std::mt19937_64 rng(seed ^ 0x5eedf00dULL);  // fresh points, distinct from solver stream
    bool ok = true;
    for (int p = 0; p < points; ++p) {
        auto pt = random_spectral_point(series.k(), rng);
        GaussianRational r = pde_apply(series, pt, y);
        if (!r.is_zero()) {
            ok = false;
            std::cout << "[FAIL] pde residual at point " << p << ": " << to_string(r) << "\n";
        }
    }
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "pde k=" << k << " beta=" << beta << ": residual"
              << (ok ? " exactly zero" : " nonzero") << " at " << points
              << " fresh points (seed " << seed << ")\n";
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_verify_largey(int draws, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    bool ok = true;
    for (int order = 0; order <= 2; ++order) {
        int zeros = 0;
        for (int d = 0; d < draws; ++d) {
            auto pt = random_spectral_point(3, rng);
            auto rep = phi_order_residual(order, pt, Rational(7));
            if (rep.pass)
                ++zeros;
            else
                ok = false;
        }
        std::cout << (zeros == draws ? "[PASS] " : "[FAIL] ") << "phi order " << order << ": "
                  << zeros << "/" << draws << " draws exactly zero\n";
    }
    auto rep = largey_vs_recursion(5);
    rep.seed = seed;
    print_report_line(rep);
    ok &= rep.pass;
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_verify_mc(int k, int beta, std::uint64_t samples, std::uint64_t seed) {
    if (beta == 2) {
        SpectralPoint pt = default_point(k, 0);
        auto est = mc_group_integral(Ensemble::unitary, pt, samples, seed);
        auto det = hciz_unitary_det(pt);
        double dist = std::abs(est.mean - det) / est.std_error;
        bool ok = dist < 4.0;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "mc unitary k=" << k << ": estimate ("
                  << fmt_double(est.mean.real()) << ", " << fmt_double(est.mean.imag())
                  << ") vs determinant (" << fmt_double(det.real()) << ", "
                  << fmt_double(det.imag()) << "), sigma-distance " << fmt_double(dist)
                  << " (seed " << seed << ")\n";
        return ok ? kExitOk : kExitVerifyFail;
    }
    if (beta == 4) {
        ChiSeries series = (k == 2)   ? chi_k2(Rational(4), 1)
                           : (k == 3) ? chi_k3(Rational(4), 3)
                                      : solve_chi(k, Rational(4), 1, seed).chi;
        SpectralPoint p1 = default_point(k, 0), p2 = default_point(k, 1);
        auto e1 = mc_group_integral(Ensemble::symplectic, p1, samples, seed);
        auto e2 = mc_group_integral(Ensemble::symplectic, p2, samples, seed + 1);
        auto r1 = reconstruct_full_integral(series, Rational(4), p1);
        auto r2 = reconstruct_full_integral(series, Rational(4), p2);
        std::complex<double> mc_ratio = e1.mean / e2.mean;
        std::complex<double> rec_ratio = r1 / r2;
        double sigma = std::abs(mc_ratio) *
                       std::sqrt(std::pow(e1.std_error / std::abs(e1.mean), 2) +
                                 std::pow(e2.std_error / std::abs(e2.mean), 2));
        double dist = std::abs(mc_ratio - rec_ratio) / sigma;
        bool ok = dist < 4.0;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << "mc symplectic k=" << k
                  << ": ratio sigma-distance " << fmt_double(dist) << " (seed " << seed << ")\n";
        return ok ? kExitOk : kExitVerifyFail;
    }
    throw CLI::ValidationError("verify mc supports --beta 2 or 4");
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"exact WKB expansions of group integrals over the classical ensembles"};
    app.require_subcommand(1);
    bool json_errors = false;
    app.add_flag("--json-errors", json_errors, "emit errors as JSON on stderr");

    // ---- expand ----
    ExpandSpec expand;
    auto* sub_expand = app.add_subcommand("expand", "emit a chi series");
    sub_expand->add_option("--k", expand.k, "matrix size")->required();
    sub_expand->add_option("--beta", expand.beta, "symmetry parameter (even for k >= 4)");
    sub_expand->add_option("--y", expand.y_str, "y value as a rational, alternative to --beta");
    sub_expand->add_option("--order", expand.order, "truncation order (default: terminating)");
    sub_expand->add_option("--format", expand.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub_expand->add_option("--labels", expand.labels, "tau|v edge labels in text output")
        ->check(CLI::IsMember({"tau", "v"}));
    sub_expand->add_option("--seed", expand.seed, "collocation seed (k >= 4)");

    // ---- coeff ----
    auto* sub_coeff = app.add_subcommand("coeff", "exact coefficient queries");
    std::vector<int> k3_idx;
    int complete_n = -1;
    std::string ratio_rule;
    int ratio_k = 0;
    std::string coeff_y;
    sub_coeff->add_option("--k3", k3_idx, "n m r of the three-point coefficient")->expected(3);
    sub_coeff->add_option("--complete", complete_n, "complete-graph weight of n points");
    sub_coeff->add_option("--ratio", ratio_rule,
                          "one_line|two_lines_same_point|two_lines_nonadjacent (normalized by C_k)");
    sub_coeff->add_option("--k", ratio_k, "k for --ratio");
    sub_coeff->add_option("--y", coeff_y, "evaluate at this rational y");

    // ---- k3 ----
    auto* sub_k3 = app.add_subcommand("k3", "three-point recursion coefficients");
    int k3_n = -1, k3_m = -1, k3_r = -1, k3_table = -1;
    std::string k3_y;
    bool k3_symbolic = false;
    sub_k3->add_option("--n", k3_n, "first index");
    sub_k3->add_option("--m", k3_m, "second index");
    sub_k3->add_option("--r", k3_r, "third index");
    sub_k3->add_option("--y", k3_y, "evaluate at this rational y");
    sub_k3->add_flag("--symbolic", k3_symbolic, "print the polynomial in y (default)");
    sub_k3->add_option("--table", k3_table, "emit the full table up to this order as JSON");

    // ---- graph ----
    auto* sub_graph = app.add_subcommand("graph", "complete-graph weights and deletion rules");
    int graph_k = 4;
    std::string graph_format = "text";
    bool graph_chi = false;
    std::uint64_t graph_seed = default_seed();
    sub_graph->add_option("--k", graph_k, "point count")->required();
    sub_graph->add_option("--format", graph_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    sub_graph->add_flag("--chi", graph_chi, "also emit the beta=4 series (k <= 6; k=6 is slow)");
    sub_graph->add_option("--seed", graph_seed, "collocation seed for --chi");

    // ---- solve ----
    auto* sub_solve = app.add_subcommand("solve", "collocation solve for even beta");
    int solve_k = 4, solve_beta = 4;
    std::uint64_t solve_seed = default_seed();
    sub_solve->add_option("--k", solve_k, "matrix size")->required();
    sub_solve->add_option("--beta", solve_beta, "even symmetry parameter")->required();
    sub_solve->add_option("--seed", solve_seed, "collocation seed");

    // ---- largey ----
    auto* sub_largey = app.add_subcommand("largey", "1/y expansion of log chi");
    int largey_order = -1, largey_k = 3, largey_draws = 50;
    bool largey_check = false;
    std::uint64_t largey_seed = default_seed();
    sub_largey->add_option("--order", largey_order, "0|1|2: print this order of phi");
    sub_largey->add_option("--k", largey_k, "point count (order 2 is k=3 only)");
    sub_largey->add_flag("--check", largey_check, "run the residual and consistency suites");
    sub_largey->add_option("--draws", largey_draws, "random points for --check");
    sub_largey->add_option("--seed", largey_seed, "seed for --check");

    // ---- mc ----
    auto* sub_mc = app.add_subcommand("mc", "Haar Monte Carlo estimate of the group integral");
    std::string mc_ensemble = "u", mc_x, mc_lambda;
    int mc_k = 2;
    std::uint64_t mc_samples = default_samples(), mc_seed = default_seed();
    sub_mc->add_option("--ensemble", mc_ensemble, "o|u|s")->check(CLI::IsMember({"o", "u", "s"}));
    sub_mc->add_option("--k", mc_k, "matrix size");
    sub_mc->add_option("--samples", mc_samples, "Monte Carlo samples");
    sub_mc->add_option("--seed", mc_seed, "RNG seed");
    sub_mc->add_option("--x", mc_x, "comma separated rational x eigenvalues")->required();
    sub_mc->add_option("--lambda", mc_lambda, "comma separated rational lambda eigenvalues")
        ->required();

    // ---- verify ----
    auto* sub_verify = app.add_subcommand("verify", "run a verification suite");
    std::string verify_suite;
    int verify_k = 3, verify_beta = 4, verify_draws = 100, verify_points = 50;
    std::uint64_t verify_seed = default_seed(), verify_samples = default_samples();
    std::string verify_series;
    sub_verify->add_option("suite", verify_suite, "identities|pde|largey|mc|all")->required();
    sub_verify->add_option("--k", verify_k, "matrix size");
    sub_verify->add_option("--beta", verify_beta, "even symmetry parameter");
    sub_verify->add_option("--draws", verify_draws, "random draws for identity checks");
    sub_verify->add_option("--points", verify_points, "fresh points for pde checks");
    sub_verify->add_option("--samples", verify_samples, "Monte Carlo samples");
    sub_verify->add_option("--seed", verify_seed, "RNG seed");
    sub_verify->add_option("--series", verify_series, "verify this JSON series file instead");

    try {
        app.parse(argc, argv);

        if (sub_expand->parsed()) return cmd_expand(expand);

        if (sub_coeff->parsed()) {
            if (!k3_idx.empty()) {
                YPolynomial p = c_triple(k3_idx[0], k3_idx[1], k3_idx[2]);
                if (!coeff_y.empty())
                    std::cout << to_string(p.eval(parse_rational(coeff_y))) << "\n";
                else
                    std::cout << p.str() << "\n";
            } else if (complete_n >= 0) {
                std::cout << complete_weight(complete_n).str() << "\n";
            } else if (!ratio_rule.empty()) {
                if (ratio_k < 4) throw CLI::ValidationError("--ratio needs --k >= 4");
                DeletionRule rule;
                if (ratio_rule == "one_line") rule = DeletionRule::one_line;
                else if (ratio_rule == "two_lines_same_point") rule = DeletionRule::two_lines_same_point;
                else if (ratio_rule == "two_lines_nonadjacent") rule = DeletionRule::two_lines_nonadjacent;
                else throw CLI::ValidationError("unknown rule " + ratio_rule);
                Rational w = deletion_rule_weight(ratio_k, rule);
                std::cout << to_string(w / Rational(complete_weight(ratio_k))) << "\n";
            } else {
                throw CLI::ValidationError("coeff needs --k3, --complete or --ratio");
            }
            return kExitOk;
        }

        if (sub_k3->parsed()) {
            if (k3_table >= 0) {
                CoefficientTable3 table(k3_table);
                nlohmann::json entries = nlohmann::json::array();
                for (const auto& [idx, poly] : table.entries()) {
                    nlohmann::json coeff = nlohmann::json::array();
                    for (const auto& q : poly.coefficients()) coeff.push_back(to_string(q));
                    entries.push_back({{"n", idx[0]}, {"m", idx[1]}, {"r", idx[2]}, {"coeff_y", coeff}});
                }
                std::cout << nlohmann::json{{"max_order", k3_table}, {"entries", entries}}.dump(2)
                          << "\n";
                return kExitOk;
            }
            if (k3_n < 0 || k3_m < 0 || k3_r < 0)
                throw CLI::ValidationError("k3 needs --n --m --r or --table");
            YPolynomial p = c_triple(k3_n, k3_m, k3_r);
            if (!k3_y.empty())
                std::cout << to_string(p.eval(parse_rational(k3_y))) << "\n";
            else
                std::cout << p.str() << "\n";
            return kExitOk;
        }

        if (sub_graph->parsed()) {
            nlohmann::json j;
            j["complete_weights"] = nlohmann::json::array();
            for (int n = 0; n <= graph_k; ++n) j["complete_weights"].push_back(complete_weight(n).str());
            if (graph_k >= 2)
                j["one_line"] = to_string(deletion_rule_weight(graph_k, DeletionRule::one_line));
            if (graph_k >= 4) {
                j["two_lines_same_point"] =
                    to_string(deletion_rule_weight(graph_k, DeletionRule::two_lines_same_point));
                Rational w = deletion_rule_weight(graph_k, DeletionRule::two_lines_nonadjacent);
                j["two_lines_nonadjacent"] = to_string(w);
                j["two_lines_nonadjacent_over_Ck"] = to_string(w / Rational(complete_weight(graph_k)));
            }
            if (graph_chi) {
                if (graph_k == 6)
                    std::cerr << "note: the k=6 solve is long-running\n";
                j["beta4_chi"] = beta4_chi(graph_k, graph_seed).to_json();
            }
            if (graph_format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                for (int n = 0; n <= graph_k; ++n)
                    std::cout << "C_" << n << " = " << complete_weight(n).str() << "\n";
                if (j.contains("one_line"))
                    std::cout << "one line deleted: " << j["one_line"].get<std::string>() << "\n";
                if (j.contains("two_lines_same_point"))
                    std::cout << "two lines, same point: "
                              << j["two_lines_same_point"].get<std::string>() << "\n";
                if (j.contains("two_lines_nonadjacent"))
                    std::cout << "two lines, nonadjacent: "
                              << j["two_lines_nonadjacent"].get<std::string>() << " ("
                              << j["two_lines_nonadjacent_over_Ck"].get<std::string>()
                              << " of C_k)\n";
                if (graph_chi) std::cout << beta4_chi(graph_k, graph_seed).str() << "\n";
            }
            return kExitOk;
        }

        if (sub_solve->parsed()) {
            if (solve_beta < 2 || solve_beta % 2 != 0)
                throw CLI::ValidationError("--beta must be a positive even integer");
            auto result = solve_chi(solve_k, y_from_beta(solve_beta), solve_beta / 2 - 1, solve_seed);
            nlohmann::json j = result.chi.to_json();
            j["gauge"] = result.gauge.to_json();
            j["gauge"]["seed"] = result.seed;
            std::cout << j.dump(2) << "\n";
            return kExitOk;
        }

        if (sub_largey->parsed()) {
            if (largey_check) return cmd_verify_largey(largey_draws, largey_seed);
            if (largey_order < 0) throw CLI::ValidationError("largey needs --order or --check");
            VPolynomial p;
            if (largey_order == 0) p = phi0(largey_k);
            else if (largey_order == 1) p = phi1(largey_k);
            else if (largey_order == 2) {
                if (largey_k != 3) throw CLI::ValidationError("order 2 is k=3 only");
                p = phi2_k3();
            } else {
                throw CLI::ValidationError("--order must be 0, 1 or 2");
            }
            std::cout << vpoly_str(p, largey_k) << "\n";
            return kExitOk;
        }

        if (sub_mc->parsed()) {
            auto xs = parse_rational_list(mc_x);
            auto ls = parse_rational_list(mc_lambda);
            if (mc_k != static_cast<int>(xs.size()))
                mc_k = static_cast<int>(xs.size());
            SpectralPoint pt(xs, ls);
            Ensemble ens = mc_ensemble == "o"   ? Ensemble::orthogonal
                           : mc_ensemble == "s" ? Ensemble::symplectic
                                                : Ensemble::unitary;
            auto est = mc_group_integral(ens, pt, mc_samples, mc_seed);
            std::cout << est.to_json().dump(2) << "\n";
            return kExitOk;
        }

        if (sub_verify->parsed()) {
            if (verify_suite == "identities")
                return cmd_verify_identities(verify_k, verify_draws, verify_seed);
            if (verify_suite == "pde")
                return cmd_verify_pde(verify_k, verify_beta, verify_series, verify_seed,
                                      verify_points);
            if (verify_suite == "largey") return cmd_verify_largey(verify_draws, verify_seed);
            if (verify_suite == "mc")
                return cmd_verify_mc(verify_k, verify_beta, verify_samples, verify_seed);
            if (verify_suite == "all") {
                int rc = 0;
                rc |= cmd_verify_identities(3, verify_draws, verify_seed);
                rc |= cmd_verify_identities(4, verify_draws, verify_seed + 1);
                rc |= cmd_verify_pde(3, 4, "", verify_seed, 10);
                rc |= cmd_verify_pde(4, 4, "", verify_seed, 10);
                rc |= cmd_verify_pde(4, 6, "", verify_seed, 10);
                rc |= cmd_verify_largey(20, verify_seed);
                rc |= cmd_verify_mc(2, 2, std::min<std::uint64_t>(verify_samples, 200000),
                                    verify_seed);
                return rc ? kExitVerifyFail : kExitOk;
            }
            throw CLI::ValidationError("unknown suite " + verify_suite);
        }

        return kExitBadArgs;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help
        if (json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::invalid_argument& e) {
        if (json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::exception& e) {
        if (json_errors)
            std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        else
            std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
}

} // namespace hiz
