#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sgq/errors.hpp"
#include "sgq/orthocore.hpp"

using namespace sgq;

TEST_CASE("stieltjes_varying with unit factor recovers the Jacobi table") {
    const Interval iv(-1, 0);
    auto base = base_gauss_rule(MeasureSpec::legendre(-1, 0), 30);
    auto t = stieltjes_varying(base, std::vector<double>(30, 1.0), 12);
    auto ref = shift_recurrence(jacobi_recurrence(0, 0, 13), iv);
    REQUIRE(t.size() == 13);
    for (int k = 0; k <= 12; ++k) {
        CHECK(std::fabs(t.alphas[k] - ref.alphas[k]) <= 1e-13);
        CHECK(std::fabs(t.betas[k] - ref.betas[k]) <= 1e-13 * ref.betas[k] + 1e-16);
    }
}

TEST_CASE("stieltjes_varying: linear factor on [-1,0]") {
    // weighted centroid of (c - x) dx on [-1,0], c = 1/sqrt(3), from exact moments
    const double c = 1 / std::sqrt(3.0);
    const oracle::ld m0 = c * 1.0L + 0.5L;           // int (c - x)
    const oracle::ld m1 = -c * 0.5L - 1.0L / 3.0L;   // int x (c - x)
    const double alpha0 = static_cast<double>(m1 / m0);
    auto base = base_gauss_rule(MeasureSpec::legendre(-1, 0), 4);
    std::vector<double> f;
    for (double x : base.nodes) f.push_back(c - x);
    auto t = stieltjes_varying(base, f, 1);
    CHECK(t.alphas[0] == doctest::Approx(alpha0).epsilon(1e-15));
    CHECK(t.mass() == doctest::Approx(static_cast<double>(m0)).epsilon(1e-15));

    auto t0 = stieltjes_varying(base, f, 0);
    CHECK(t0.size() == 1);
    CHECK(t0.mass() == doctest::Approx(static_cast<double>(m0)).epsilon(1e-15));
}

TEST_CASE("stieltjes_varying breakdown and validation") {
    auto base = base_gauss_rule(MeasureSpec::legendre(0, 1), 3);
    CHECK_THROWS_AS(stieltjes_varying(base, {1, 1, 1}, 3), NumericError);
    CHECK_THROWS_AS(stieltjes_varying(base, {1, -1, 1}, 1), NumericError);
    CHECK_THROWS_AS(stieltjes_varying(base, {1, 1}, 1), ParameterError);
}

TEST_CASE("gauss_from_recurrence examples") {
    auto g = gauss_from_recurrence(jacobi_recurrence(0, 0, 2), 2);
    CHECK(g.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(g.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

    auto t = jacobi_recurrence(0.3, 0.1, 1);
    auto g1 = gauss_from_recurrence(t, 1);
    CHECK(g1.nodes[0] == t.alphas[0]);
    CHECK(g1.weights[0] == t.mass());

    auto c = gauss_from_recurrence(jacobi_recurrence(0.5, 0.5, 2), 2);
    CHECK(c.nodes[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(c.nodes[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(c.weights[0] == doctest::Approx(M_PI / 4).epsilon(1e-15));
    CHECK(c.weights[1] == doctest::Approx(M_PI / 4).epsilon(1e-15));

    CHECK_THROWS_AS(gauss_from_recurrence(t, 2), ParameterError);
}

TEST_CASE("polished rule agrees with the plain one") {
    auto t = jacobi_recurrence(-0.5, 0.5, 30);
    auto a = gauss_from_recurrence(t, 30), b = gauss_from_recurrence(t, 30, true);
    for (int k = 0; k < 30; ++k) {
        CHECK(std::fabs(a.nodes[k] - b.nodes[k]) < 1e-14);
        CHECK(b.weights[k] == doctest::Approx(a.weights[k]).epsilon(1e-11));
    }
}

TEST_CASE("orthonormal_eval and christoffel") {
    auto t = jacobi_recurrence(0, 0, 4);
    auto p = orthonormal_eval(t, 2, 0.3);
    CHECK(p[0] == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(p[1] == doctest::Approx(0.3 * std::sqrt(1.5)));
    CHECK(orthonormal_eval(t, 0, 0.3).empty());

    CHECK(christoffel(t, 1, 0.77) == doctest::Approx(2.0));
    CHECK(christoffel(t, 2, 1 / std::sqrt(3.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(christoffel(t, 2, 0.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(christoffel(t, 0, 0.0), ParameterError);
}

TEST_CASE("christoffel equals Gauss weights at the nodes") {
    std::vector<RecurrenceTable> tables = {jacobi_recurrence(0, 0, 41), jacobi_recurrence(0.5, -0.3, 41),
                                           shift_recurrence(jacobi_recurrence(1.2, 2.5, 41), Interval(2, 5), 3.7)};
    for (const auto& t : tables)
        for (int n : {1, 2, 7, 20, 40}) {
            auto g = gauss_from_recurrence(t, n);
            for (int k = 0; k < n; ++k)
                CHECK(std::fabs(christoffel(t, n, g.nodes[k]) / g.weights[k] - 1.0) <= 1e-11);
        }
}

TEST_CASE("orthogonality residual of the discrete inner product") {
    auto base = base_gauss_rule(MeasureSpec::legendre(-1, 0), 48);
    std::vector<double> f;
    for (double x : base.nodes) f.push_back(std::exp(3 * x) * (2 - x));
    const int n = 30;
    auto t = stieltjes_varying(base, f, n);
    std::vector<std::vector<double>> P;
    for (double x : base.nodes) {
        auto v = orthonormal_eval(t, n + 1, x);
        P.push_back(v);
    }
    double worst_off = 0, worst_diag = 0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j) {
            double s = 0;
            for (std::size_t b = 0; b < base.size(); ++b) s += base.weights[b] * f[b] * P[b][i] * P[b][j];
            if (i == j) worst_diag = std::max(worst_diag, std::fabs(s - 1));
            else worst_off = std::max(worst_off, std::fabs(s));
        }
    CHECK(worst_off <= 1e-11);
    CHECK(worst_diag <= 1e-11);
}

TEST_CASE("zeros of consecutive orthogonal polynomials interlace") {
    auto t = shift_recurrence(jacobi_recurrence(0.7, -0.4, 30), Interval(-2, 1), 0.3);
    for (int n = 2; n < 30; ++n) {
        auto a = gauss_from_recurrence(t, n - 1).nodes, b = gauss_from_recurrence(t, n).nodes;
        for (int k = 0; k < n - 1; ++k) {
            CHECK(b[k] < a[k]);
            CHECK(a[k] < b[k + 1]);
        }
    }
}

TEST_CASE("log_leading_coefficient") {
    auto t = jacobi_recurrence(0, 0, 3);
    // monic Legendre pi_1 = x has norm^2 = 2/3
    CHECK(log_leading_coefficient(t, 1) == doctest::Approx(-0.5 * std::log(2.0 / 3.0)));
    CHECK_THROWS_AS(log_leading_coefficient(t, 3), ParameterError);
}
