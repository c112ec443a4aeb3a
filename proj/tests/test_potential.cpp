#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sgq/angelesco.hpp"
#include "sgq/errors.hpp"
#include "sgq/potential.hpp"

using namespace sgq;

namespace {

const double kA = std::sqrt(5 + 4 * std::sqrt(2.0));

const EquilibriumSolution& ex1() {
    static const EquilibriumSolution s = solve_vector_equilibrium(Interval(-kA, -1), Interval(1, kA));
    return s;
}
const EquilibriumSolution& ex2() {
    static const EquilibriumSolution s = solve_vector_equilibrium(Interval(-1, 0), Interval(0, 0.25));
    return s;
}
const EquilibriumSolution& far_pair() {
    static const EquilibriumSolution s = solve_vector_equilibrium(Interval(-1, 0), Interval(100, 101));
    return s;
}
const EquilibriumSolution& near_pair() {
    static const EquilibriumSolution s = solve_vector_equilibrium(Interval(-1, 0), Interval(0.05, 0.3));
    return s;
}

std::vector<double> linspace(double lo, double hi, int k) {
    std::vector<double> v(k);
    for (int i = 0; i < k; ++i) v[i] = lo + (hi - lo) * i / (k - 1);
    return v;
}

// high-order Gauss-Chebyshev on the arcsine law; only valid off the support
double arcsine_potential_direct(double x) {
    const int m = 4000;
    oracle::ld s = 0;
    for (int i = 1; i <= m; ++i) {
        const oracle::ld t = std::cos((2 * i - 1) * M_PI / (2 * m));
        s -= std::log(std::fabs(static_cast<oracle::ld>(x) - t));
    }
    return static_cast<double>(s / m);
}

}  // namespace

TEST_CASE("arcsine potential") {
    auto nu = DiscreteMeasure::arcsine(Interval(-1, 1), 256);
    CHECK(nu.mass == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : {-1.0, -0.7, 0.0, 0.3, nu.grid[17], 1.0}) CHECK(log_potential(nu, x) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    const double at2 = std::log(2 / (2 + std::sqrt(3.0)));
    CHECK(log_potential(nu, 2.0) == doctest::Approx(at2).epsilon(1e-12));
    CHECK(arcsine_potential_direct(2.0) == doctest::Approx(at2).epsilon(1e-12));
    CHECK(std::fabs(log_potential(nu, 1e6) + std::log(1e6)) <= 1e-5);
    CHECK(log_potential(nu, std::complex<double>(2.0, 0.0)) == doctest::Approx(at2).epsilon(1e-12));
    // translated and scaled: U(x; arcsine[a,b]) = log(4/(b-a)) on [a,b]
    auto nu2 = DiscreteMeasure::arcsine(Interval(3, 3.5), 128);
    CHECK(log_potential(nu2, 3.2) == doctest::Approx(std::log(8.0)).epsilon(1e-12));
    // I(nu,nu) = log 2 for the arcsine law of [-1,1]
    CHECK(self_energy(nu) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(mutual_energy(nu, nu) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("discrete measure helpers") {
    auto nu = DiscreteMeasure::arcsine(Interval(0, 2), 64);
    CHECK(nu.integrate([](double x) { return x; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nu.integrate([](double x) { return (x - 1) * (x - 1); }) == doctest::Approx(0.5).epsilon(1e-14));
    auto m = nu.mirrored();
    CHECK(m.support.a == -2.0);
    CHECK(m.support.b == 0.0);
    CHECK(m.integrate([](double x) { return x; }) == doctest::Approx(-1.0).epsilon(1e-14));
    for (int i = 1; i < m.size(); ++i) CHECK(m.grid[i] > m.grid[i - 1]);
}

TEST_CASE("Example 1 geometry") {
    const auto& s = ex1();
    CHECK(s.case_tag == CaseTag::I);
    CHECK(s.b_star == -1.0);
    CHECK(s.a_star == 1.0);
    CHECK(std::fabs(s.ell1 - s.ell2) <= 1e-10);
    CHECK(s.nu1.mass == doctest::Approx(1.0).epsilon(1e-8));
    for (double x : linspace(1, kA, 25)) CHECK(rate_function(s, 1, x) < 0);
    CHECK(mrs_limit(s.nu2, -kA, -1) == -1.0);
}

TEST_CASE("Example 2 geometry") {
    const auto& s = ex2();
    CHECK(s.case_tag == CaseTag::II);
    CHECK(s.a_star == 0.0);
    CHECK(std::fabs(s.b_star + 1.0 / 28) <= 1e-6);
    CHECK(std::fabs(mrs_limit(s.nu2, -1, 0) + 1.0 / 28) <= 1e-3);
    // weights start exponentially large just right of 0 and end exponentially small
    CHECK(rate_function(s, 1, 0.001) > 0);
    CHECK(rate_function(s, 1, 0.25) < 0);
    CHECK(to_string(s.case_tag) == "II");
}

TEST_CASE("widely separated intervals decouple") {
    const auto& s = far_pair();
    CHECK(s.case_tag == CaseTag::I);
    CHECK(s.b_star == 0.0);
    CHECK(s.a_star == 100.0);
    auto arc = DiscreteMeasure::arcsine(Interval(-1, 0), 256);
    // the other measure tilts nu1 by O(width / distance)
    for (int i = 0; i < s.nu1.size(); i += 17) CHECK(std::fabs(s.nu1.phi[i] - 1.0) <= 1e-2);
    for (double x : {-1.0, -0.5, 0.0})
        CHECK(std::fabs(log_potential(s.nu1, x) - log_potential(arc, x)) <= 1e-2);
    // cross term nearly constant over the left interval
    CHECK(std::fabs(log_potential(s.nu2, -1.0) - log_potential(s.nu2, 0.0)) <= 0.011);
}

TEST_CASE("variational conditions") {
    for (const auto* sp : {&ex1(), &ex2(), &far_pair(), &near_pair()}) {
        const auto& s = *sp;
        CHECK(s.b_star >= s.i1.a);
        CHECK(s.b_star <= s.i1.b);
        CHECK(s.a_star >= s.i2.a);
        CHECK(s.a_star <= s.i2.b);
        for (double x : linspace(s.i1.a, s.b_star, 41)) CHECK(std::fabs(rate_function(s, 1, x)) <= 5e-6);
        for (double x : linspace(s.a_star, s.i2.b, 41)) CHECK(std::fabs(rate_function(s, 2, x)) <= 5e-6);
        if (s.b_star < s.i1.b)
            for (double x : linspace(s.b_star, s.i1.b, 21))
                if (x > s.b_star + 1e-3 * s.i1.width()) CHECK(rate_function(s, 1, x) > 0);
        if (s.a_star > s.i2.a)
            for (double x : linspace(s.i2.a, s.a_star, 21))
                if (x < s.a_star - 1e-3 * s.i2.width()) CHECK(rate_function(s, 2, x) > 0);
        CHECK(s.ell1 == doctest::Approx(2 * log_potential(s.nu1, s.i1.a) + log_potential(s.nu2, s.i1.a)).epsilon(1e-14));
        // G1 non-increasing along [a*, b2]
        double prev = rate_function(s, 1, s.a_star);
        for (double x : linspace(s.a_star, s.i2.b, 200)) {
            const double g = rate_function(s, 1, x);
            CHECK(g <= prev + 1e-12);
            prev = g;
        }
        CHECK(s.nu1.mass == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(s.nu2.mass == doctest::Approx(1.0).epsilon(1e-8));
        for (double d : s.nu1.density) CHECK(d >= 0);
        for (double d : s.nu2.density) CHECK(d >= 0);
        CHECK(std::fabs(mrs_limit(s.nu2, s.i1.a, s.i1.b) - s.b_star) <= 1e-6);
    }
}

TEST_CASE("energy decreases along the iteration") {
    for (const auto* sp : {&ex1(), &ex2(), &far_pair(), &near_pair()}) {
        const auto& e = sp->energy;
        REQUIRE(e.size() >= 2);
        for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1] + 1e-12 * std::fabs(e[i - 1]));
    }
}

TEST_CASE("solver validation and determinism") {
    EquilibriumOptions o;
    o.grid_size = 32;
    CHECK_THROWS_AS(solve_vector_equilibrium(Interval(-1, 0), Interval(0, 1), o), ParameterError);
    o = {};
    o.tol = 0;
    CHECK_THROWS_AS(solve_vector_equilibrium(Interval(-1, 0), Interval(0, 1), o), ParameterError);
    CHECK_THROWS_AS(solve_vector_equilibrium(Interval(0, 1), Interval(-1, 0)), ParameterError);
    o = {};
    o.max_iter = 1;
    CHECK_THROWS_AS(solve_vector_equilibrium(Interval(-1, 0), Interval(0, 0.25), o), ConvergenceError);
    auto a = solve_vector_equilibrium(Interval(-1, 0), Interval(0, 0.25));
    CHECK(to_json_value(a).dump() == to_json_value(ex2()).dump());
    auto csv = rate_csv(a, -1, 0.25, 5);
    CHECK(csv.rfind("x,G1,G2\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    auto j = to_json_value(a);
    CHECK(j["case"] == "II");
    CHECK(j["nu1"]["grid"].size() == 256);
}

TEST_CASE("mrs_limit one-term surrogate") {
    // sqrt((t - a)/(t - b)) = level  =>  b = t - (t - a)/level^2
    CHECK(mrs_limit({3.0}, {1.0}, -1, 2.5, 2.0) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(mrs_limit({3.0}, {1.0}, -1, 2.9, 3.0) == doctest::Approx(3 - 4.0 / 9).epsilon(1e-13));
    CHECK(mrs_limit({3.0}, {1.0}, -1, 2.5, 3.0) == 2.5);
    CHECK(mrs_limit({3.0}, {1.0}, -1, 1.0, 3.0) == 1.0);
}

TEST_CASE("phi_cubic") {
    for (auto set : {CubicSet::Example1, CubicSet::Example2})
        for (double x : {-2.5, -0.5, 0.0, 0.1, 0.7, 3.0}) {
            auto c = phi_cubic_coefficients(set, x);
            auto r = phi_cubic(set, x);
            REQUIRE(!r.empty());
            for (double t : r) {
                const double scale = std::max({1.0, std::fabs(t * t * t), std::fabs(c.q1 * t * t), std::fabs(c.q2 * t), std::fabs(c.q0)});
                CHECK(std::fabs(((t + c.q1) * t + c.q2) * t + c.q0) <= 1e-12 * scale);
            }
            for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i] >= r[i - 1]);
            if (r.size() == 3) {
                CHECK(r[0] + r[1] + r[2] == doctest::Approx(-c.q1).epsilon(1e-12));
                CHECK(r[0] * r[1] * r[2] == doctest::Approx(-c.q0).scale(1e-9).epsilon(1e-10));
            } else {
                // one real root t: t^3 + q1 t^2 + q2 t + q0 = (t - r)(t^2 + u t + v) with u = q1 + r, v = -q0 / r
                const double t = r[0], u = c.q1 + t, v = -c.q0 / t;
                CHECK(u * u - 4 * v < 0);
                CHECK(v - t * u == doctest::Approx(c.q2).scale(1e-9).epsilon(1e-10));
            }
        }
    // Example 2 at x = -0.5 has a single real root and a complex pair
    CHECK(phi_cubic(CubicSet::Example2, -0.5).size() == 1);
    auto c = phi_cubic_coefficients(CubicSet::Example1, 0.0);
    const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
    CHECK(c.q0 == doctest::Approx(32 * r3 / 27 * (1 - 4 * r2 / 9)));
    CHECK(c.q1 == doctest::Approx(4 * r3 / 3 * (3 - r2)));
    CHECK(c.q2 == doctest::Approx(4.0 / 9 * (3 - 2 * r2) * (27 + 16 * r2)));
    auto d = phi_cubic_coefficients(CubicSet::Example2, 1.0);
    CHECK(d.q0 == 625.0 / 1048576);
    CHECK(d.q1 == doctest::Approx(-81.0 / 64 + 33.0 / 128));
    CHECK(d.q2 == doctest::Approx(-675.0 / 4096 - 675.0 / 8192 + 1425.0 / 65536));
}

TEST_CASE("real_cubic_roots") {
    auto r = real_cubic_roots(-6, 11, -6);
    REQUIRE(r.size() == 3);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r[2] == doctest::Approx(3.0).epsilon(1e-15));
    auto one = real_cubic_roots(0, 0, -8);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("kalyagin_cubic") {
    CHECK_THROWS_AS(kalyagin_cubic(0.0), ParameterError);
    for (double y : {1.0, 0.5, 2.0, -1.5}) {
        auto u = kalyagin_cubic(y);
        REQUIRE(!u.empty());
        const double k = 27.0 / (4 * y * y);
        for (double t : u) {
            const double v = t + 1;
            CHECK(std::fabs(v * v * v - k * v + k) <= 1e-12 * std::max(1.0, k * std::fabs(v)));
        }
        if (u.size() == 3) CHECK(u[0] + u[1] + u[2] == doctest::Approx(-3.0).epsilon(1e-12));
    }
    // y = 1: v^3 - 27/4 v + 27/4 has the double root v = 3/2 and v = -3
    auto u = kalyagin_cubic(1.0);
    CHECK(u.front() == doctest::Approx(-4.0).epsilon(1e-12));
    CHECK(u.back() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Example 1 cubic branch") {
    const auto& s = ex1();
    auto m = cubic_branch_match(s.nu1, CubicSet::Example1, 0.0, linspace(-0.9, 0.9, 10));
    CHECK(m.samples == 10);
    CHECK(m.max_deviation <= 1e-4);
    CHECK(m.kappa == doctest::Approx(-(1 + std::sqrt(2.0)) / 2).epsilon(1e-6));
}

TEST_CASE("zero distribution") {
    auto touch = solve_vector_equilibrium(Interval(-1, 0), Interval(0, 1));
    AngelescoSystem sys(MeasureSpec::legendre(-1, 0), MeasureSpec::legendre(0, 1));
    auto rep = zero_distribution_check(solve_mop(sys, 40), touch);
    REQUIRE(rep.size() == 4);
    CHECK(rep[0].f == "1");
    CHECK(rep[0].discrepancy1() <= 1e-4);
    CHECK(rep[0].discrepancy2() <= 1e-4);
    CHECK(rep[1].f == "x");
    CHECK(rep[1].discrepancy1() <= 0.05);
    CHECK(rep[1].discrepancy2() <= 0.05);
    CHECK(rep[1].empirical1 == doctest::Approx(-rep[1].empirical2).epsilon(1e-12));

    AngelescoSystem e1(MeasureSpec::legendre(-kA, -1), MeasureSpec::legendre(1, kA));
    auto rep1 = zero_distribution_check(solve_mop(e1, 30), ex1());
    CHECK(rep1[1].empirical1 == doctest::Approx(-rep1[1].empirical2).epsilon(1e-12));
    CHECK(rep1[0].discrepancy1() <= 1e-7);
    for (const auto& e : rep1) {
        CHECK(e.discrepancy1() <= 0.1);
        CHECK(e.discrepancy2() <= 0.1);
    }
}

TEST_CASE("Example 2 cubic branch on the right interval") {
    auto m = cubic_branch_match(ex2().nu1, CubicSet::Example2, 0.125, linspace(0.0125, 0.2375, 10));
    CHECK(m.max_deviation <= 1e-10);
    CHECK(m.kappa == doctest::Approx(-8.40221).epsilon(1e-5));
    for (double x : linspace(0.0125, 0.2375, 10)) CHECK(phi_cubic(CubicSet::Example2, x).size() == 1);
}
