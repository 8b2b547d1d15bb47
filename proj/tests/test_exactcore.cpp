#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hiz/recursion3.hpp"
#include "hiz/series.hpp"

#include <random>

using namespace hiz;

TEST_CASE("rational parsing and canonical form") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-6/4") == Rational(-3, 2));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(to_string(Rational(-3, 2)) == "-3/2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(denominator(Rational(Integer(4), Integer(-6))) == 3);  // canonical positive denominator
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("gaussian rational arithmetic and i powers") {
    GaussianRational z(Rational(1), Rational(2));
    CHECK(times_i_power(z, 1) == GaussianRational(Rational(-2), Rational(1)));
    CHECK(times_i_power(z, 2) == GaussianRational(Rational(-1), Rational(-2)));
    CHECK(times_i_power(z, 4) == z);
    CHECK((z * z) == GaussianRational(Rational(-3), Rational(4)));
}

TEST_CASE("ypoly_eval examples") {
    // p = y/2 at y=4 -> 2
    YPolynomial half_y = YPolynomial::monomial(Rational(1, 2), 1);
    CHECK(half_y.eval(Rational(4)) == Rational(2));

    // p = (y/2)(-1 + y/4): zero at y=4, 12 at y=12
    YPolynomial p = half_y * YPolynomial{Rational(-1), Rational(1, 4)};
    CHECK(p.eval(Rational(4)) == Rational(0));
    CHECK(p.eval(Rational(12)) == Rational(12));
}

TEST_CASE("ypoly canonicalization and printing") {
    YPolynomial p{Rational(1), Rational(0), Rational(0)};
    CHECK(p.degree() == 0);
    CHECK(YPolynomial{}.is_zero());
    CHECK((YPolynomial{Rational(1)} - YPolynomial{Rational(1)}).is_zero());
    CHECK(YPolynomial{Rational(-1, 2), Rational(0), Rational(1)}.str() == "-1/2 + y^2");
}

TEST_CASE("edge monomial ordering is graded dense-lex") {
    EdgeIndex e12(1, 2), e13(1, 3), e23(2, 3);
    EdgeMonomial a = EdgeMonomial::single(e12);
    EdgeMonomial b = EdgeMonomial::single(e23);
    CHECK(b < a);                       // same degree, larger exponent at earlier edge wins
    CHECK(EdgeMonomial() < a);          // degree first
    EdgeMonomial sq = EdgeMonomial::single(e13, 2);
    EdgeMonomial pr = EdgeMonomial::single(e12) * EdgeMonomial::single(e23);
    CHECK(sq < pr);
    CHECK(pr.total_degree() == 2);
    CHECK(pr.max_edge_exponent() == 1);
}

TEST_CASE("series multiply identity and cap behavior") {
    ChiSeries one = ChiSeries::one(3, 6);
    CHECK(series_multiply_truncate(one, one, 6, std::nullopt) == one);

    // (1 + v1)(1 + v2) with per-edge cap 1 -> 1 + v1 + v2 + v1 v2
    ChiSeries s1 = ChiSeries::one(3, 6), s2 = ChiSeries::one(3, 6);
    s1.set_coeff(EdgeMonomial::single(EdgeIndex(2, 3)), YPolynomial::one());
    s2.set_coeff(EdgeMonomial::single(EdgeIndex(1, 3)), YPolynomial::one());
    auto prod = series_multiply_truncate(s1, s2, 6, 1);
    CHECK(prod.coeff(EdgeMonomial()) == YPolynomial::one());
    CHECK(prod.coeff(EdgeMonomial::single(EdgeIndex(2, 3))) == YPolynomial::one());
    CHECK(prod.coeff(EdgeMonomial::single(EdgeIndex(1, 3))) == YPolynomial::one());
    CHECK(prod.coeff(EdgeMonomial::single(EdgeIndex(2, 3)) *
                     EdgeMonomial::single(EdgeIndex(1, 3))) == YPolynomial::one());
    CHECK(prod.terms().size() == 4);

    // squares die under the cap
    auto sq = series_multiply_truncate(s1, s1, 6, 1);
    CHECK(sq.coeff(EdgeMonomial::single(EdgeIndex(2, 3), 2)).is_zero());
}

TEST_CASE("series_eval basics") {
    SpectralPoint pt({Rational(0), Rational(1)}, {Rational(0), Rational(2)});
    ChiSeries one = ChiSeries::one(2, 2);
    CHECK(series_eval(one, pt, Rational(4)) == GaussianRational(Rational(1)));

    // s = i*(y/2)/tau12 at y=4 with tau12 = 2 -> i
    ChiSeries s = ChiSeries::one(2, 2);
    s.set_coeff(EdgeMonomial::single(EdgeIndex(1, 2)), YPolynomial::monomial(Rational(1, 2), 1));
    s.set_coeff(EdgeMonomial(), YPolynomial());
    CHECK(pt.tau(EdgeIndex(1, 2)) == Rational(2));
    CHECK(series_eval(s, pt, Rational(4)) == GaussianRational(Rational(0), Rational(1)));
}

TEST_CASE("series_eval rejects coincident eigenvalues") {
    CHECK_THROWS_AS(SpectralPoint({Rational(1), Rational(1)}, {Rational(0), Rational(2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SpectralPoint({Rational(0), Rational(2)}, {Rational(3), Rational(3)}),
                    std::invalid_argument);
}

TEST_CASE("eq I3 evaluation matches direct substitution") {
    // oracle: direct evaluation of 1 + 2i(1/t12 + 1/t23 + 1/t31)
    //         - 4(1/(t12 t23) + 1/(t23 t31) + 1/(t31 t12)) - 12i/(t12 t23 t31)
    SpectralPoint pt({Rational(0), Rational(1), Rational(3)},
                     {Rational(0), Rational(1), Rational(2)});
    Rational t12 = pt.tau(EdgeIndex(1, 2));
    Rational t23 = pt.tau(EdgeIndex(2, 3));
    Rational t31 = pt.tau(EdgeIndex(1, 3));
    GaussianRational expect(Rational(1));
    expect += GaussianRational(Rational(0), Rational(2)) *
              (Rational(1) / t12 + Rational(1) / t23 + Rational(1) / t31);
    expect += GaussianRational(Rational(-4)) *
              (Rational(1) / (t12 * t23) + Rational(1) / (t23 * t31) + Rational(1) / (t31 * t12));
    expect += GaussianRational(Rational(0), Rational(-12)) * (Rational(1) / (t12 * t23 * t31));

    CHECK(series_eval(chi_k3(Rational(4), 3), pt, Rational(4)) == expect);
    CHECK(expect == GaussianRational(Rational(-2), Rational(7, 3)));
}

namespace {

std::mt19937_64 rng(20240809);

YPolynomial random_poly() {
    std::uniform_int_distribution<int> deg(0, 3), num(-6, 6), den(1, 4);
    std::vector<Rational> c;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) c.push_back(Rational(num(rng), den(rng)));
    return YPolynomial(std::move(c));
}

ChiSeries random_series(int k, int max_deg) {
    ChiSeries s(k, max_deg);
    std::uniform_int_distribution<int> nterms(1, 5);
    int n = nterms(rng);
    auto monos = monomials_of_degree(k, 0, 0);
    for (int t = 0; t < n; ++t) {
        std::uniform_int_distribution<int> deg(0, max_deg);
        int d = deg(rng);
        auto level = monomials_of_degree(k, d, d);
        std::uniform_int_distribution<std::size_t> pick(0, level.size() - 1);
        s.add_coeff(level[pick(rng)], random_poly());
    }
    return s;
}

} // namespace

TEST_CASE("ring axioms on randomized small instances") {
    for (int trial = 0; trial < 25; ++trial) {
        YPolynomial a = random_poly(), b = random_poly(), c = random_poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
    for (int trial = 0; trial < 10; ++trial) {
        ChiSeries a = random_series(3, 4), b = random_series(3, 4), c = random_series(3, 4);
        const int D = 4;
        auto ab_c = series_multiply_truncate(series_multiply_truncate(a, b, D, std::nullopt), c, D,
                                             std::nullopt);
        auto a_bc = series_multiply_truncate(a, series_multiply_truncate(b, c, D, std::nullopt), D,
                                             std::nullopt);
        CHECK(ab_c == a_bc);
        auto sum = b;
        for (const auto& [m, q] : c.terms()) sum.add_coeff(m, q);
        auto dist_l = series_multiply_truncate(a, sum, D, std::nullopt);
        auto dist_r = series_multiply_truncate(a, b, D, std::nullopt);
        auto ac = series_multiply_truncate(a, c, D, std::nullopt);
        for (const auto& [m, q] : ac.terms()) dist_r.add_coeff(m, q);
        CHECK(dist_l == dist_r);
    }
}

TEST_CASE("eval is multiplicative without truncation loss") {
    std::mt19937_64 prng(7);
    for (int trial = 0; trial < 10; ++trial) {
        ChiSeries a = random_series(3, 2), b = random_series(3, 2);
        auto pt = random_spectral_point(3, prng);
        Rational y(5, 3);
        auto prod = series_multiply_truncate(a, b, 4, std::nullopt);
        CHECK(series_eval(prod, pt, y) == series_eval(a, pt, y) * series_eval(b, pt, y));
    }
}

TEST_CASE("json round trip is the identity") {
    std::mt19937_64 prng(99);
    for (int trial = 0; trial < 10; ++trial) {
        ChiSeries s = random_series(4, 3);
        auto j = s.to_json();
        ChiSeries back = ChiSeries::from_json(j);
        CHECK(back == s);
        CHECK(back.max_degree() == s.max_degree());
    }
    // the documented schema shape
    auto j = chi_k3(Rational(4), 3).to_json();
    CHECK(j.contains("k"));
    CHECK(j.contains("max_degree"));
    CHECK(j["terms"].is_array());
    CHECK(ChiSeries::from_json(j) == chi_k3(Rational(4), 3));
}
