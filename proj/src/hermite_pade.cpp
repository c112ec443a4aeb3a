#include "sgq/hermite_pade.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "sgq/errors.hpp"
#include "sgq/io.hpp"
#include "sgq/orthocore.hpp"

namespace sgq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CplxSum {
    KahanSum re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx value() const { return {re.value(), im.value()}; }
};

double log_abs_prod(const std::vector<double>& zeros, cplx z) {
    double s = 0.0;
    for (double x : zeros) s += std::log(std::abs(z - x));
    return s;
}

}  // namespace

HPApproximant::HPApproximant(SimulRule rule) : rule_(std::move(rule)) {}

std::pair<cplx, cplx> hp_eval(const HPApproximant& approx, cplx z) {
    const auto& r = approx.rule();
    if (r.nodes.empty()) throw ParameterError("empty rule");
    const double span = std::max(r.nodes.back() - r.nodes.front(), 1.0);
    CplxSum s1, s2;
    for (std::size_t j = 0; j < r.nodes.size(); ++j) {
        const cplx d = z - r.nodes[j];
        if (std::abs(d) <= 1e-14 * span) throw PoleError("hp_eval at a node");
        const cplx inv = 1.0 / d;
        s1.add(r.lambda1[j].value * inv);
        s2.add(r.lambda2[j].value * inv);
    }
    return {s1.value(), s2.value()};
}

cplx markov_eval(const MeasureSpec& mu, cplx z, int order) {
    if (order < 16) throw ParameterError("markov_eval needs order >= 16");
    const Interval& iv = mu.interval;
    const double cx = std::clamp(z.real(), iv.a, iv.b);
    if (std::abs(z - cx) < 1e-6 * iv.width()) throw AccuracyError("z too close to the support");
    auto eval = [&](int m) {
        GaussRule g = base_gauss_rule(mu, m);
        CplxSum s;
        for (std::size_t i = 0; i < g.size(); ++i) s.add(g.weights[i] / (z - g.nodes[i]));
        return s.value();
    };
    const cplx a = eval(order), b = eval(2 * order);
    if (std::abs(a - b) > 1e-10 * std::abs(b)) throw AccuracyError("Cauchy transform not resolved at this order");
    return b;
}

double hp_log_remainder(const AngelescoSystem& system, const MopPair& mop, cplx z, int family) {
    const int n = mop.n;
    const auto& sq = family == 1 ? mop.p_zeros : mop.q_zeros;  // squared factor
    const auto& lin = family == 1 ? mop.q_zeros : mop.p_zeros;
    const MeasureSpec& mu = system.mu(family);
    auto integral = [&](int m, double& scale) {
        GaussRule g = base_gauss_rule(mu, m);
        std::vector<double> L(g.size());
        scale = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.size(); ++i) {
            L[i] = std::log(g.weights[i]) + 2.0 * log_abs_prod(sq, g.nodes[i]) + log_abs_prod(lin, g.nodes[i]);
            scale = std::max(scale, L[i]);
        }
        CplxSum s;
        for (std::size_t i = 0; i < g.size(); ++i) s.add(std::exp(L[i] - scale) / (z - g.nodes[i]));
        return s.value();
    };
    const int m = (3 * n + 2) / 2 + 24;
    double sa, sb;
    const cplx a = integral(m, sa), b = integral(m + 24, sb);
    const double va = std::log(std::abs(a)) + sa, vb = std::log(std::abs(b)) + sb;
    if (std::fabs(va - vb) > 1e-8) throw AccuracyError("remainder integral not resolved");
    return vb - 2.0 * log_abs_prod(sq, z) - log_abs_prod(lin, z);
}

void parallel_for(int count, int workers, const std::function<void(int)>& job) {
    workers = std::max(1, std::min(workers, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

std::vector<HPErrorRow> hp_error_rate(const AngelescoSystem& system, cplx z, const std::vector<int>& n_values,
                                      int workers) {
    const cplx g1 = markov_eval(system.mu1, z), g2 = markov_eval(system.mu2, z);
    std::vector<HPErrorRow> rows(n_values.size());
    parallel_for(static_cast<int>(n_values.size()), workers, [&](int i) {
        const int n = n_values[i];
        MopPair mop = solve_mop(system, n);
        HPApproximant hp(quad_weights(system, mop));
        auto [qp, rp] = hp_eval(hp, z);
        HPErrorRow r;
        r.n = n;
        r.direct1 = std::abs(g1 - qp);
        r.direct2 = std::abs(g2 - rp);
        const double l1 = hp_log_remainder(system, mop, z, 1), l2 = hp_log_remainder(system, mop, z, 2);
        r.error1 = std::exp(l1);
        r.error2 = std::exp(l2);
        r.rate1 = l1 / n;
        r.rate2 = l2 / n;
        rows[i] = r;
    });
    return rows;
}

TestFunction TestFunction::lookup(const std::string& id) {
    TestFunction t;
    t.id = id;
    if (id == "exp") {
        t.f = [](double x) { return std::exp(x); };
    } else if (id == "runge") {
        t.f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
    } else if (id == "abs" || id.rfind("abs:", 0) == 0) {
        double c = -0.5;
        if (id.size() > 4) {
            try {
                c = std::stod(id.substr(4));
            } catch (const std::exception&) {
                throw ParameterError("bad shift in '" + id + "'");
            }
        }
        t.kink = c;
        t.f = [c](double x) { return std::fabs(x - c); };
    } else if (id.rfind("poly", 0) == 0 && id.size() > 4) {
        int d = 0;
        try {
            d = std::stoi(id.substr(4));
        } catch (const std::exception&) {
            throw ParameterError("bad degree in '" + id + "'");
        }
        if (d < 0 || d > 400) throw ParameterError("polynomial degree out of range in '" + id + "'");
        t.degree = d;
        // truncated exponential series, evaluated by Horner
        t.f = [d](double x) {
            double s = 1.0;
            for (int k = d; k >= 1; --k) s = 1.0 + s * x / k;
            return s;
        };
    } else {
        throw ParameterError("unknown test function '" + id + "'");
    }
    return t;
}

double reference_integral(const MeasureSpec& mu, const TestFunction& f, double lo, double hi) {
    if (!(lo < hi)) return 0.0;
    const bool legendre = mu.alpha == 0.0 && mu.beta == 0.0 && mu.factor.trivial();
    if (f.id == "exp" && legendre) return std::exp(hi) - std::exp(lo);
    if (f.degree >= 0 && legendre) {
        // antiderivative of the truncated series is the next truncation minus 1
        const int d = f.degree + 1;
        auto F = [d](double x) {
            double s = 1.0;
            for (int k = d; k >= 1; --k) s = 1.0 + s * x / k;
            return s;
        };
        return F(hi) - F(lo);
    }
    auto piece = [&](double a, double b) {
        const double r1 = partial_integral(mu, f.f, a, b, 64);
        const double r2 = partial_integral(mu, f.f, a, b, 128);
        if (std::fabs(r1 - r2) > 1e-12 * std::max(1.0, std::fabs(r2)))
            throw AccuracyError("reference integral for '" + f.id + "' failed its doubling check");
        return r2;
    };
    if (std::isfinite(f.kink) && f.kink > lo && f.kink < hi) return piece(lo, f.kink) + piece(f.kink, hi);
    return piece(lo, hi);
}

ConvergenceMode parse_mode(const std::string& s) {
    if (s == "restricted") return ConvergenceMode::Restricted;
    if (s == "full") return ConvergenceMode::Full;
    if (s == "both") return ConvergenceMode::Both;
    throw ParameterError("mode must be restricted, full or both");
}

std::vector<ConvergenceRow> quadrature_convergence(const AngelescoSystem& system, const std::string& f_id,
                                                   const std::vector<int>& n_values, const ConvergenceOptions& opt) {
    const TestFunction tf = TestFunction::lookup(f_id);
    const Interval& i1 = system.mu1.interval;
    const Interval& i2 = system.mu2.interval;
    const double bs = std::isfinite(opt.b_star) ? opt.b_star : i1.b;
    const double as = std::isfinite(opt.a_star) ? opt.a_star : i2.a;
    const double full1 = reference_integral(system.mu1, tf, i1.a, i1.b);
    const double full2 = reference_integral(system.mu2, tf, i2.a, i2.b);
    const double res1 = reference_integral(system.mu1, tf, i1.a, bs);
    const double res2 = reference_integral(system.mu2, tf, as, i2.b);
    const bool want_r = opt.mode != ConvergenceMode::Full, want_f = opt.mode != ConvergenceMode::Restricted;

    std::vector<ConvergenceRow> rows(n_values.size());
    parallel_for(static_cast<int>(n_values.size()), opt.workers, [&](int i) {
        const int n = n_values[i];
        SimulRule rule = quad_weights(system, solve_mop(system, n));
        KahanSum r1, f1, r2, f2;
        for (int k = 0; k < 2 * n; ++k) {
            const double fx = tf.f(rule.nodes[k]);
            const double t1 = rule.lambda1[k].value * fx, t2 = rule.lambda2[k].value * fx;
            f1.add(t1);
            f2.add(t2);
            if (k < n) r1.add(t1); else r2.add(t2);
        }
        ConvergenceRow row;
        row.n = n;
        row.error_restricted_1 = want_r ? std::fabs(r1.value() - res1) : kNaN;
        row.error_restricted_2 = want_r ? std::fabs(r2.value() - res2) : kNaN;
        row.error_full_1 = want_f ? std::fabs(f1.value() - full1) : kNaN;
        row.error_full_2 = want_f ? std::fabs(f2.value() - full2) : kNaN;
        const double e1 = want_f ? row.error_full_1 : row.error_restricted_1;
        const double e2 = want_f ? row.error_full_2 : row.error_restricted_2;
        row.rate_1 = std::log(e1) / n;
        row.rate_2 = std::log(e2) / n;
        rows[i] = row;
    });
    return rows;
}

std::string to_csv(const std::vector<ConvergenceRow>& rows) {
    std::ostringstream os;
    os << "n,error_restricted_1,error_full_1,error_restricted_2,error_full_2,rate_1,rate_2\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt17(r.error_restricted_1) << ',' << fmt17(r.error_full_1) << ','
           << fmt17(r.error_restricted_2) << ',' << fmt17(r.error_full_2) << ',' << fmt17(r.rate_1) << ','
           << fmt17(r.rate_2) << '\n';
    return os.str();
}

std::string to_csv(const std::vector<HPErrorRow>& rows) {
    std::ostringstream os;
    os << "n,direct_1,error_1,rate_1,direct_2,error_2,rate_2\n";
    for (const auto& r : rows)
        os << r.n << ',' << fmt17(r.direct1) << ',' << fmt17(r.error1) << ',' << fmt17(r.rate1) << ','
           << fmt17(r.direct2) << ',' << fmt17(r.error2) << ',' << fmt17(r.rate2) << '\n';
    return os.str();
}

}  // namespace sgq
