#include "sgq/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sgq/errors.hpp"
#include "sgq/io.hpp"

namespace sgq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> chebyshev_grid(const Interval& iv, int G) {
    std::vector<double> x(G);
    for (int i = 0; i < G; ++i) x[i] = iv.center() - iv.half() * std::cos((2.0 * i + 1.0) * M_PI / (2.0 * G));
    return x;
}

std::vector<double> chebyshev_coefficients(const std::vector<double>& phi) {
    const int G = static_cast<int>(phi.size());
    std::vector<double> c(G, 0.0);
    for (int i = 0; i < G; ++i) {
        const double u = -std::cos((2.0 * i + 1.0) * M_PI / (2.0 * G));
        double t0 = 1.0, t1 = u;
        c[0] += phi[i];
        if (G > 1) c[1] += phi[i] * u;
        for (int k = 2; k < G; ++k) {
            const double t2 = 2.0 * u * t1 - t0;
            c[k] += phi[i] * t2;
            t0 = t1;
            t1 = t2;
        }
    }
    for (auto& v : c) v *= 2.0 / G;
    c[0] *= 0.5;
    return c;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::from_phi(const Interval& support, std::vector<double> phi) {
    DiscreteMeasure m;
    m.support = support;
    const int G = static_cast<int>(phi.size());
    if (G < 2) throw ParameterError("discrete measure needs at least 2 grid points");
    m.grid = chebyshev_grid(support, G);
    m.phi = std::move(phi);
    m.density.resize(G);
    double s = 0.0;
    for (int i = 0; i < G; ++i) {
        const double x = m.grid[i];
        m.density[i] = m.phi[i] / (M_PI * std::sqrt((x - support.a) * (support.b - x)));
        s += m.phi[i];
    }
    m.mass = s / G;
    m.cheb = chebyshev_coefficients(m.phi);
    return m;
}

DiscreteMeasure DiscreteMeasure::arcsine(const Interval& support, int G) {
    return from_phi(support, std::vector<double>(G, 1.0));
}

double DiscreteMeasure::integrate(const std::function<double(double)>& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += phi[i] * f(grid[i]);
    return s / size();
}

DiscreteMeasure DiscreteMeasure::mirrored() const {
    std::vector<double> p(phi.rbegin(), phi.rend());
    return from_phi(Interval(-support.b, -support.a), std::move(p));
}

double log_potential(const DiscreteMeasure& nu, std::complex<double> z) {
    const double h = nu.support.half();
    const std::complex<double> Z = (z - nu.support.center()) / h;
    std::complex<double> W = Z + std::sqrt(Z - 1.0) * std::sqrt(Z + 1.0);
    if (std::abs(W) < 1.0) W = 1.0 / W;
    const std::complex<double> iw = 1.0 / W;
    double u = -nu.cheb[0] * (std::log(h) + std::log(std::abs(W) / 2.0));
    std::complex<double> pw = 1.0;
    for (std::size_t k = 1; k < nu.cheb.size(); ++k) {
        pw *= iw;
        u += nu.cheb[k] * pw.real() / static_cast<double>(k);
    }
    return u;
}

double log_potential(const DiscreteMeasure& nu, double x) { return log_potential(nu, std::complex<double>(x, 0.0)); }

double self_energy(const DiscreteMeasure& nu) {
    const double c0 = nu.cheb[0];
    double e = -c0 * c0 * std::log(nu.support.half() / 2.0);
    for (std::size_t k = 1; k < nu.cheb.size(); ++k) e += nu.cheb[k] * nu.cheb[k] / (2.0 * k);
    return e;
}

double mutual_energy(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2) {
    return nu2.integrate([&](double x) { return log_potential(nu1, x); });
}

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::II: return "II";
        case CaseTag::III: return "III";
        default: return "I";
    }
}

double mrs_limit(const std::vector<double>& nodes, const std::vector<double>& weights, double a1, double b1,
                 double level) {
    auto F = [&](double b) {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * std::sqrt((nodes[i] - a1) / (nodes[i] - b));
        return s;
    };
    if (F(b1) <= level) return b1;
    double lo = a1, hi = b1;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (F(mid) > level ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double mrs_limit(const DiscreteMeasure& nu2, double a1, double b1, double level) {
    std::vector<double> w(nu2.size());
    for (int i = 0; i < nu2.size(); ++i) w[i] = nu2.node_weight(i);
    return mrs_limit(nu2.grid, w, a1, b1, level);
}

namespace {

// Quadrature representation of the measure acting from the right.
struct Pull {
    std::vector<double> s, w;
    void add(const DiscreteMeasure& m, double scale, bool reflect) {
        for (int i = 0; i < m.size(); ++i) {
            s.push_back(reflect ? -m.grid[i] : m.grid[i]);
            w.push_back(scale * m.node_weight(i));
        }
    }
};

// Equilibrium measure of [a, bmax] in the field (1/2) U(.; other), other to the right.
DiscreteMeasure one_sided(double a, double bmax, const Pull& other, int G) {
    const double b = mrs_limit(other.s, other.w, a, bmax, 3.0);
    const Interval iv(a, b);
    const auto x = chebyshev_grid(iv, G);
    std::vector<double> phi(G);
    const bool soft = b < bmax;
    for (int i = 0; i < G; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < other.s.size(); ++j) {
            const double s = other.s[j];
            acc += other.w[j] * (soft ? std::sqrt((s - a) / (s - b)) : std::sqrt((s - a) * (s - b))) / (s - x[i]);
        }
        phi[i] = soft ? 0.5 * (b - x[i]) * acc : 1.5 - 0.5 * acc;
    }
    return DiscreteMeasure::from_phi(iv, std::move(phi));
}

double potential_gap(const DiscreteMeasure& a, const DiscreteMeasure& b, const std::vector<double>& pts) {
    double r = 0.0;
    for (double x : pts) r = std::max(r, std::fabs(log_potential(a, x) - log_potential(b, x)));
    return r;
}

}  // namespace

EquilibriumSolution solve_vector_equilibrium(const Interval& i1, const Interval& i2, const EquilibriumOptions& opt) {
    if (opt.grid_size < 64) throw ParameterError("grid_size must be >= 64");
    if (!(opt.tol > 0)) throw ParameterError("tol must be > 0");
    if (i1.b > i2.a) throw ParameterError("intervals must be ordered with b1 <= a2");
    const int G = opt.grid_size;

    std::vector<double> probe;
    for (const Interval* iv : {&i1, &i2})
        for (int k = 0; k <= 32; ++k) probe.push_back(iv->center() - iv->half() * std::cos(k * M_PI / 32));

    EquilibriumSolution sol;
    sol.i1 = i1;
    sol.i2 = i2;
    DiscreteMeasure nu2 = DiscreteMeasure::arcsine(i2, G), nu1, prev1, prev2 = nu2;
    // previous inputs kept for the damped (mixed) update
    DiscreteMeasure in2 = nu2, in1;
    bool have1 = false;
    double prev_res = kInf, res = kInf;
    int rises = 0, it = 0;
    for (it = 1; it <= opt.max_iter; ++it) {
        Pull from2;
        if (sol.damped && have1) {
            from2.add(nu2, 0.5, false);
            from2.add(in2, 0.5, false);
        } else {
            from2.add(nu2, 1.0, false);
        }
        in2 = nu2;
        nu1 = one_sided(i1.a, i1.b, from2, G);
        sol.energy.push_back(self_energy(nu1) + self_energy(nu2) + mutual_energy(nu1, nu2));

        Pull from1;
        if (sol.damped && have1) {
            from1.add(nu1, 0.5, true);
            from1.add(in1, 0.5, true);
        } else {
            from1.add(nu1, 1.0, true);
        }
        in1 = nu1;
        nu2 = one_sided(-i2.b, -i2.a, from1, G).mirrored();
        sol.energy.push_back(self_energy(nu1) + self_energy(nu2) + mutual_energy(nu1, nu2));

        if (have1) {
            res = std::max(potential_gap(nu1, prev1, probe), potential_gap(nu2, prev2, probe));
            if (res > prev_res) {
                if (++rises >= 2) sol.damped = true;
            } else {
                rises = 0;
            }
            prev_res = res;
            if (res <= opt.tol) break;
        }
        prev1 = nu1;
        prev2 = nu2;
        have1 = true;
    }
    if (!(res <= opt.tol))
        throw ConvergenceError("vector equilibrium did not converge (residual " + std::to_string(res) + ")", res);

    for (const DiscreteMeasure* m : {&nu1, &nu2})
        for (double v : m->phi)
            if (v < -1e-8) throw NumericError("negative equilibrium density; support endpoint is wrong");

    sol.nu1 = std::move(nu1);
    sol.nu2 = std::move(nu2);
    sol.iterations = it;
    sol.residual = res;
    sol.b_star = sol.nu1.support.b;
    sol.a_star = sol.nu2.support.a;
    sol.ell1 = 2.0 * log_potential(sol.nu1, i1.a) + log_potential(sol.nu2, i1.a);
    sol.ell2 = log_potential(sol.nu1, i2.b) + 2.0 * log_potential(sol.nu2, i2.b);
    if (sol.b_star < i1.b) sol.case_tag = CaseTag::II;
    else if (sol.a_star > i2.a) sol.case_tag = CaseTag::III;
    else sol.case_tag = CaseTag::I;
    return sol;
}

double rate_function(const EquilibriumSolution& sol, int which, std::complex<double> z) {
    const double u1 = log_potential(sol.nu1, z), u2 = log_potential(sol.nu2, z);
    if (which == 1) return 2.0 * u1 + u2 - sol.ell1;
    if (which == 2) return u1 + 2.0 * u2 - sol.ell2;
    throw ParameterError("rate function index must be 1 or 2");
}

double rate_function(const EquilibriumSolution& sol, int which, double x) {
    return rate_function(sol, which, std::complex<double>(x, 0.0));
}

CubicCoefficients phi_cubic_coefficients(CubicSet set, double x) {
    CubicCoefficients c;
    if (set == CubicSet::Example1) {
        const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0);
        c.q0 = 32.0 * r3 / 27.0 * (1.0 - 4.0 * r2 / 9.0);
        c.q1 = 4.0 * r3 / 3.0 * (3.0 - r2);
        c.q2 = 4.0 / 9.0 * (3.0 - 2.0 * r2) * (27.0 + 16.0 * r2 - 9.0 * x * x);
    } else {
        c.q0 = 625.0 / 1048576.0;
        c.q1 = -81.0 / 64.0 * x + 33.0 / 128.0;
        c.q2 = -675.0 / 4096.0 * x * x - 675.0 / 8192.0 * x + 1425.0 / 65536.0;
    }
    return c;
}

std::vector<double> real_cubic_roots(double c2, double c1, double c0) {
    const double p = c1 - c2 * c2 / 3.0;
    const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
    const double disc = 0.25 * q * q + p * p * p / 27.0;
    std::vector<double> s;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        const double u = std::cbrt(-0.5 * q - std::copysign(sq, q));
        s.push_back(u == 0.0 ? 0.0 : u - p / (3.0 * u));
    } else if (p == 0.0) {
        s.push_back(0.0);
    } else {
        const double r = std::sqrt(-p / 3.0);
        const double arg = std::clamp(-0.5 * q / (r * r * r), -1.0, 1.0);
        const double th = std::acos(arg);
        for (int k = 0; k < 3; ++k) s.push_back(2.0 * r * std::cos((th - 2.0 * M_PI * k) / 3.0));
    }
    std::vector<double> roots;
    for (double v : s) {
        double t = v - c2 / 3.0;
        for (int it = 0; it < 4; ++it) {
            const double f = ((t + c2) * t + c1) * t + c0;
            const double d = (3.0 * t + 2.0 * c2) * t + c1;
            if (d == 0.0 || f == 0.0) break;
            const double step = f / d;
            const double t2 = t - step;
            const double f2 = ((t2 + c2) * t2 + c1) * t2 + c0;
            if (std::fabs(f2) >= std::fabs(f)) break;
            t = t2;
        }
        roots.push_back(t);
    }
    std::sort(roots.begin(), roots.end());
    if (roots.size() == 3) {
        // a close pair is only sqrt(eps)-accurate; recover it from the cofactor of the isolated root
        const double g01 = roots[1] - roots[0], g12 = roots[2] - roots[1];
        const double scale = std::max({1.0, std::fabs(roots[0]), std::fabs(roots[2])});
        if (std::min(g01, g12) < 1e-4 * scale) {
            const double r = g01 < g12 ? roots[2] : roots[0];
            const double u = c2 + r, v = c1 + r * u;  // t^3 + c2 t^2 + c1 t + c0 = (t - r)(t^2 + u t + v)
            const double d = u * u - 4.0 * v;
            double t1 = -0.5 * u, t2 = -0.5 * u;
            if (d > 0.0) {
                const double w = -0.5 * (u + std::copysign(std::sqrt(d), u));
                t1 = w;
                t2 = w == 0.0 ? 0.0 : v / w;
            }
            roots = {r, t1, t2};
            std::sort(roots.begin(), roots.end());
        }
    }
    return roots;
}

std::vector<double> phi_cubic(CubicSet set, double x) {
    const auto c = phi_cubic_coefficients(set, x);
    return real_cubic_roots(c.q1, c.q2, c.q0);
}

std::vector<double> kalyagin_cubic(double y) {
    if (y == 0.0 || !std::isfinite(y)) throw ParameterError("kalyagin_cubic needs finite y != 0");
    const double k = 27.0 / (4.0 * y * y);
    auto v = real_cubic_roots(0.0, -k, k);
    for (auto& t : v) t -= 1.0;
    return v;
}

BranchMatch cubic_branch_match(const DiscreteMeasure& nu, CubicSet set, double anchor,
                               const std::vector<double>& samples) {
    const auto at = phi_cubic(set, anchor);
    const double e0 = std::exp(-log_potential(nu, anchor));
    BranchMatch best;
    best.max_deviation = kInf;
    for (std::size_t b = 0; b < at.size(); ++b) {
        if (at[b] == 0.0) continue;
        const double kappa = e0 / at[b];
        double worst = 0.0;
        for (double x : samples) {
            const double e = std::exp(-log_potential(nu, x));
            double d = kInf;
            for (double r : phi_cubic(set, x)) d = std::min(d, std::fabs(kappa * r - e));
            worst = std::max(worst, d);
        }
        if (worst < best.max_deviation) {
            best.kappa = kappa;
            best.branch = static_cast<int>(b);
            best.max_deviation = worst;
        }
    }
    best.samples = static_cast<int>(samples.size());
    return best;
}

std::vector<ZeroDistributionEntry> zero_distribution_check(const MopPair& mop, const EquilibriumSolution& sol) {
    const std::vector<std::pair<std::string, std::function<double(double)>>> fs = {
        {"1", [](double) { return 1.0; }},
        {"x", [](double x) { return x; }},
        {"x2", [](double x) { return x * x; }},
        {"cos", [](double x) { return std::cos(x); }},
    };
    std::vector<ZeroDistributionEntry> out;
    for (const auto& [name, f] : fs) {
        ZeroDistributionEntry e{name, 0.0, sol.nu1.integrate(f), 0.0, sol.nu2.integrate(f)};
        for (double z : mop.p_zeros) e.empirical1 += f(z);
        for (double z : mop.q_zeros) e.empirical2 += f(z);
        e.empirical1 /= mop.n;
        e.empirical2 /= mop.n;
        out.push_back(e);
    }
    return out;
}

namespace {

nlohmann::json measure_json(const DiscreteMeasure& m) {
    return nlohmann::json{{"support", m.support}, {"mass", m.mass}, {"grid", m.grid}, {"density", m.density}, {"phi", m.phi}};
}

}  // namespace

nlohmann::json to_json_value(const EquilibriumSolution& sol) {
    return nlohmann::json{{"case", to_string(sol.case_tag)},
                          {"b_star", sol.b_star},
                          {"a_star", sol.a_star},
                          {"ell1", sol.ell1},
                          {"ell2", sol.ell2},
                          {"iterations", sol.iterations},
                          {"residual", sol.residual},
                          {"damped", sol.damped},
                          {"intervals", {sol.i1, sol.i2}},
                          {"nu1", measure_json(sol.nu1)},
                          {"nu2", measure_json(sol.nu2)}};
}

std::string rate_csv(const EquilibriumSolution& sol, double lo, double hi, int samples) {
    std::ostringstream os;
    os << "x,G1,G2\n";
    for (int i = 0; i < samples; ++i) {
        const double x = samples == 1 ? lo : lo + (hi - lo) * i / (samples - 1);
        os << fmt17(x) << ',' << fmt17(rate_function(sol, 1, x)) << ',' << fmt17(rate_function(sol, 2, x)) << '\n';
    }
    return os.str();
}

}  // namespace sgq
