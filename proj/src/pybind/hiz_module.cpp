#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "hiz/graphexp.hpp"
#include "hiz/largey.hpp"
#include "hiz/oracle.hpp"
#include "hiz/pdesolver.hpp"
#include "hiz/recursion3.hpp"

#include <sstream>

namespace py = pybind11;
using namespace hiz;

namespace {

std::vector<Rational> to_rationals(const std::vector<std::string>& v) {
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

SpectralPoint make_point(const std::vector<std::string>& x, const std::vector<std::string>& l) {
    return SpectralPoint(to_rationals(x), to_rationals(l));
}

std::vector<std::string> poly_strings(const YPolynomial& p) {
    std::vector<std::string> out;
    for (const auto& c : p.coefficients()) out.push_back(to_string(c));
    return out;
}

Ensemble parse_ensemble(const std::string& s) {
    if (s == "o" || s == "orthogonal") return Ensemble::orthogonal;
    if (s == "u" || s == "unitary") return Ensemble::unitary;
    if (s == "s" || s == "symplectic") return Ensemble::symplectic;
    throw std::invalid_argument("ensemble must be o, u or s");
}

} // namespace

PYBIND11_MODULE(_hiz, m) {
    m.doc() = "exact WKB expansions of group integrals over the classical ensembles";

    m.def("complete_weight",
          [](int n) { return complete_weight(n).str(); },
          py::arg("n"), "prod_{l=1..n} l! as a decimal string");

    m.def("deletion_rule_weight",
          [](int k, const std::string& rule) {
              DeletionRule r;
              if (rule == "one_line") r = DeletionRule::one_line;
              else if (rule == "two_lines_same_point") r = DeletionRule::two_lines_same_point;
              else if (rule == "two_lines_nonadjacent") r = DeletionRule::two_lines_nonadjacent;
              else throw std::invalid_argument("unknown rule");
              return to_string(deletion_rule_weight(k, r));
          },
          py::arg("k"), py::arg("rule"));

    m.def("c_two_point", [](int n) { return poly_strings(c_two_point(n)); }, py::arg("n"),
          "coefficients of the two-point polynomial, low power of y first, as num/den strings");

    m.def("c_triple",
          [](int n, int mm, int r) { return poly_strings(c_triple(n, mm, r)); },
          py::arg("n"), py::arg("m"), py::arg("r"));

    m.def("c_triple_at",
          [](int n, int mm, int r, const std::string& y) {
              return to_string(c_triple(n, mm, r).eval(parse_rational(y)));
          },
          py::arg("n"), py::arg("m"), py::arg("r"), py::arg("y"));

    m.def("chi_json",
          [](int k, int beta, std::uint64_t seed) {
              if (beta < 2 || beta % 2) throw std::invalid_argument("even beta required");
              Rational y = Rational(beta) * (Rational(beta, 2) - 1);
              int cap = beta / 2 - 1;
              if (k == 2) return chi_k2(y, cap).to_json().dump();
              if (k == 3) return chi_k3(y, 3 * cap).to_json().dump();
              auto result = solve_chi(k, y, cap, seed);
              auto j = result.chi.to_json();
              j["gauge"] = result.gauge.to_json();
              return j.dump();
          },
          py::arg("k"), py::arg("beta"), py::arg("seed") = 12345,
          "terminating chi series for even beta, as the JSON schema");

    m.def("chi_text",
          [](int k, int beta, std::uint64_t seed) {
              if (beta < 2 || beta % 2) throw std::invalid_argument("even beta required");
              Rational y = Rational(beta) * (Rational(beta, 2) - 1);
              int cap = beta / 2 - 1;
              if (k == 2) return chi_k2(y, cap).str();
              if (k == 3) return chi_k3(y, 3 * cap).str();
              return solve_chi(k, y, cap, seed).chi.str();
          },
          py::arg("k"), py::arg("beta"), py::arg("seed") = 12345);

    m.def("series_eval",
          [](const std::string& series_json, const std::vector<std::string>& x,
             const std::vector<std::string>& l, const std::string& y) {
              auto s = ChiSeries::from_json(nlohmann::json::parse(series_json));
              auto v = series_eval(s, make_point(x, l), parse_rational(y));
              return std::make_pair(to_string(v.re), to_string(v.im));
          },
          py::arg("series_json"), py::arg("x"), py::arg("lam"), py::arg("y"),
          "exact value as (re, im) rational strings");

    m.def("pde_residual",
          [](const std::string& series_json, const std::vector<std::string>& x,
             const std::vector<std::string>& l, const std::string& y) {
              auto s = ChiSeries::from_json(nlohmann::json::parse(series_json));
              auto v = pde_apply(s, make_point(x, l), parse_rational(y));
              return std::make_pair(to_string(v.re), to_string(v.im));
          },
          py::arg("series_json"), py::arg("x"), py::arg("lam"), py::arg("y"),
          "exact heat-kernel residual as (re, im) rational strings");

    m.def("cubic_identity_residual",
          [](const std::vector<std::string>& x, const std::vector<std::string>& l) {
              return to_string(cubic_identity_residual(make_point(x, l), {1, 2, 3, 4}));
          },
          py::arg("x"), py::arg("lam"));

    m.def("id_residuals",
          [](const std::vector<std::string>& x, const std::vector<std::string>& l) {
              std::vector<std::string> out;
              for (const auto& r : id_residuals(make_point(x, l))) out.push_back(to_string(r));
              return out;
          },
          py::arg("x"), py::arg("lam"));

    m.def("phi_order_residual_is_zero",
          [](int order, const std::vector<std::string>& x, const std::vector<std::string>& l,
             const std::string& y) {
              return phi_order_residual(order, make_point(x, l), parse_rational(y)).pass;
          },
          py::arg("order"), py::arg("x"), py::arg("lam"), py::arg("y") = "7");

    m.def("mc_group_integral",
          [](const std::string& ensemble, const std::vector<std::string>& x,
             const std::vector<std::string>& l, std::uint64_t samples, std::uint64_t seed) {
              auto est = mc_group_integral(parse_ensemble(ensemble), make_point(x, l), samples, seed);
              py::dict d;
              d["mean"] = est.mean;
              d["std_error"] = est.std_error;
              d["samples"] = est.samples;
              d["seed"] = est.seed;
              return d;
          },
          py::arg("ensemble"), py::arg("x"), py::arg("lam"), py::arg("samples") = 100000,
          py::arg("seed") = 12345);

    m.def("hciz_unitary_det",
          [](const std::vector<std::string>& x, const std::vector<std::string>& l) {
              return hciz_unitary_det(make_point(x, l));
          },
          py::arg("x"), py::arg("lam"));

    m.def("reconstruct_full_integral",
          [](const std::string& series_json, int beta, const std::vector<std::string>& x,
             const std::vector<std::string>& l) {
              auto s = ChiSeries::from_json(nlohmann::json::parse(series_json));
              Rational y = Rational(beta) * (Rational(beta, 2) - 1);
              return reconstruct_full_integral(s, y, make_point(x, l));
          },
          py::arg("series_json"), py::arg("beta"), py::arg("x"), py::arg("lam"));

    m.attr("__version__") = "0.1.0";
}
