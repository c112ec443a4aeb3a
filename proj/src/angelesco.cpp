#include "sgq/angelesco.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sgq/errors.hpp"
#include "sgq/io.hpp"
#include "sgq/orthocore.hpp"

namespace sgq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int base_order(int n) { return (3 * n + 2) / 2 + 2; }  // ceil((3n+1)/2) + 2

// log of prod |x - z_i| and its sign
std::pair<double, int> log_prod(const std::vector<double>& zeros, double x) {
    double s = 0.0;
    int sg = 1;
    for (double z : zeros) {
        const double d = x - z;
        if (d == 0.0) return {-kInf, 0};
        if (d < 0) sg = -sg;
        s += std::log(std::fabs(d));
    }
    return {s, sg};
}

// Factor values normalized by their maximum, with the log of that maximum.
std::vector<double> scaled_factor(const GaussRule& base, const std::vector<double>& zeros, double& log_scale) {
    std::vector<double> lv(base.size());
    log_scale = -kInf;
    for (std::size_t i = 0; i < base.size(); ++i) {
        lv[i] = log_prod(zeros, base.nodes[i]).first;
        log_scale = std::max(log_scale, lv[i]);
    }
    for (auto& v : lv) v = std::exp(v - log_scale);
    return lv;
}

std::vector<double> chebyshev_points(const Interval& iv, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = iv.center() - iv.half() * std::cos((2.0 * i + 1.0) * M_PI / (2.0 * n));
    return x;
}

void check_inside(const std::vector<double>& z, const Interval& iv, const char* which) {
    for (double v : z)
        if (!(v > iv.a && v < iv.b) || !std::isfinite(v))
            throw DomainError(std::string("zero of ") + which + " left its interval");
}

double max_move(const std::vector<double>& a, const std::vector<double>& b) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::fabs(a[i] - b[i]));
    return r;
}

}  // namespace

MopPair mop_from_nodes(const AngelescoSystem& system, const std::vector<double>& nodes) {
    if (nodes.size() % 2 != 0 || nodes.empty()) throw ParameterError("need 2n nodes");
    const int n = static_cast<int>(nodes.size() / 2);
    if (n > kMaxDegree) throw UnsupportedError("n above the supported cap of 64");
    MopPair mop;
    mop.n = n;
    mop.p_zeros.assign(nodes.begin(), nodes.begin() + n);
    mop.q_zeros.assign(nodes.begin() + n, nodes.end());
    const int m = base_order(n);
    GaussRule b1 = base_gauss_rule(system.mu1, m), b2 = base_gauss_rule(system.mu2, m);
    mop.varying1 = stieltjes_varying(b1, scaled_factor(b1, mop.q_zeros, mop.log_scale1), n);
    mop.varying2 = stieltjes_varying(b2, scaled_factor(b2, mop.p_zeros, mop.log_scale2), n);
    mop.log_gamma1 = log_leading_coefficient(mop.varying1, n) - 0.5 * mop.log_scale1;
    mop.log_gamma2 = log_leading_coefficient(mop.varying2, n) - 0.5 * mop.log_scale2;
    mop.gamma1 = std::exp(mop.log_gamma1);
    mop.gamma2 = std::exp(mop.log_gamma2);

    // orthogonality of P = p q against x^k, k < n, relative to the absolute integrand
    double worst = 0.0;
    for (const GaussRule* b : {&b1, &b2}) {
        for (int k = 0; k < n; ++k) {
            LogSum s;
            for (std::size_t i = 0; i < b->size(); ++i) {
                const double x = b->nodes[i];
                auto [lp, sp] = log_prod(nodes, x);
                int sg = sp;
                double lx = 0.0;
                if (k > 0) {
                    if (x == 0.0) continue;
                    lx = k * std::log(std::fabs(x));
                    if (x < 0 && (k % 2)) sg = -sg;
                }
                s.add(sg, std::log(b->weights[i]) + lp + lx);
            }
            worst = std::max(worst, 1.0 / s.condition());
        }
    }
    mop.orth_residual = worst;
    return mop;
}

MopPair solve_mop(const AngelescoSystem& system, int n, const MopOptions& opt) {
    if (n < 1) throw ParameterError("n must be >= 1");
    if (n > kMaxDegree) throw UnsupportedError("n = " + std::to_string(n) + " exceeds the cap of 64");
    if (opt.max_iter < 1) throw ParameterError("max_iter must be >= 1");
    const Interval& i1 = system.mu1.interval;
    const Interval& i2 = system.mu2.interval;
    const double tol = opt.tol > 0 ? opt.tol : 1e-13 * std::max(i1.width(), i2.width());

    const int m = base_order(n);
    GaussRule b1 = base_gauss_rule(system.mu1, m), b2 = base_gauss_rule(system.mu2, m);

    std::vector<double> q = chebyshev_points(i2, n);
    std::vector<double> p(n, std::numeric_limits<double>::quiet_NaN());
    double prev = kInf, residual = kInf;
    int rises = 0, it = 0;
    bool damped = false, done = false;
    for (it = 1; it <= opt.max_iter; ++it) {
        double ls;
        auto t1 = stieltjes_varying(b1, scaled_factor(b1, q, ls), n);
        auto p_new = gauss_from_recurrence(t1, n).nodes;
        check_inside(p_new, i1, "p_n");
        auto t2 = stieltjes_varying(b2, scaled_factor(b2, p_new, ls), n);
        auto q_new = gauss_from_recurrence(t2, n).nodes;
        check_inside(q_new, i2, "q_n");

        residual = it == 1 ? max_move(q_new, q) : std::max(max_move(p_new, p), max_move(q_new, q));
        if (residual > prev) {
            if (++rises >= 2) damped = true;
        } else {
            rises = 0;
        }
        prev = residual;
        if (damped && it > 1) {
            for (int i = 0; i < n; ++i) {
                p[i] = 0.5 * (p[i] + p_new[i]);
                q[i] = 0.5 * (q[i] + q_new[i]);
            }
        } else {
            p = std::move(p_new);
            q = std::move(q_new);
        }
        if (residual <= tol) {
            done = true;
            break;
        }
    }
    if (!done)
        throw ConvergenceError("MOP fixed point did not converge (residual " + std::to_string(residual) + ")",
                               residual);

    std::vector<double> nodes(p);
    nodes.insert(nodes.end(), q.begin(), q.end());
    MopPair mop = mop_from_nodes(system, nodes);
    mop.iterations = it;
    mop.node_residual = residual;
    mop.converged = true;
    mop.damped = damped;
    if (mop.orth_residual > 1e-10)
        throw NumericError("orthogonality residual " + std::to_string(mop.orth_residual) + " above 1e-10");
    return mop;
}

namespace {

// Weight of node k for family j from the sign-definite integrand
//   own node:   (H/H(x_k)) (G_k/G_k(x_k))^2,  other node: (G_k/G_k(x_k)) (H/H(x_k))^2
// where G collects the nodes on the node's own interval and H the rest.
SignedLog factored_weight(const GaussRule& base, const std::vector<double>& nodes, int n, int family, int k) {
    const int own_lo = family == 1 ? 0 : n;  // nodes lying on mu_j's interval
    const bool own = k >= own_lo && k < own_lo + n;
    const double xk = nodes[k];
    LogSum s;
    for (std::size_t b = 0; b < base.size(); ++b) {
        const double y = base.nodes[b];
        double lg = 0.0;
        int sg = 1;
        for (int i = 0; i < 2 * n; ++i) {
            if (i == k) continue;
            const bool same_side = (i >= own_lo && i < own_lo + n) == own;
            const double num = y - nodes[i], den = xk - nodes[i];
            const double l = std::log(std::fabs(num)) - std::log(std::fabs(den));
            // squared factor: the group that contains node k when it is "own",
            // the mu_j group otherwise
            const bool squared = own ? same_side : !same_side;
            if (squared) {
                lg += 2.0 * l;
            } else {
                lg += l;
                if ((num < 0) != (den < 0)) sg = -sg;
            }
        }
        s.add(sg, std::log(base.weights[b]) + lg);
    }
    return s.result();
}

double rel_gap(const SignedLog& a, const SignedLog& b) {
    if (a.sign != b.sign) return kInf;
    if (a.sign == 0) return 0.0;
    return std::fabs(std::expm1(a.log_abs - b.log_abs));
}

}  // namespace

std::pair<SignedLog, double> lagrange_weight(const AngelescoSystem& system, const std::vector<double>& nodes,
                                             int family, int k) {
    const int N = static_cast<int>(nodes.size());
    if (k < 0 || k >= N) throw std::out_of_range("node index out of range");
    GaussRule base = base_gauss_rule(system.mu(family), N / 2 + 2);
    LogSum s;
    const double xk = nodes[k];
    for (std::size_t b = 0; b < base.size(); ++b) {
        const double y = base.nodes[b];
        double lg = 0.0;
        int sg = 1;
        for (int i = 0; i < N; ++i) {
            if (i == k) continue;
            const double num = y - nodes[i], den = xk - nodes[i];
            lg += std::log(std::fabs(num)) - std::log(std::fabs(den));
            if ((num < 0) != (den < 0)) sg = -sg;
        }
        s.add(sg, std::log(base.weights[b]) + lg);
    }
    return {s.result(), s.condition()};
}

SimulRule quad_weights(const AngelescoSystem& system, const MopPair& mop) {
    if (!mop.converged) throw PreconditionError("quad_weights needs a converged MopPair");
    const int n = mop.n;
    SimulRule rule;
    rule.n = n;
    rule.nodes = mop.p_zeros;
    rule.nodes.insert(rule.nodes.end(), mop.q_zeros.begin(), mop.q_zeros.end());
    const int m = (3 * n + 1) / 2 + 2;  // ceil(3n/2) + 2, integrands have degree <= 3n-1

    for (int family = 1; family <= 2; ++family) {
        GaussRule base = base_gauss_rule(system.mu(family), m);
        auto& lam = family == 1 ? rule.lambda1 : rule.lambda2;
        lam.resize(2 * n);
        for (int k = 0; k < 2 * n; ++k) lam[k] = factored_weight(base, rule.nodes, n, family, k);
    }

    auto note = [&](const std::string& what, int family, int k, double gap) {
        rule.crosscheck = std::max(rule.crosscheck, gap);
        if (gap > 1e-8) {
            std::ostringstream os;
            os << what << ": lambda" << family << "[" << k + 1 << "] differs by " << gap;
            rule.warnings.push_back(os.str());
        }
    };
    // positive families against the Christoffel numbers of the varying measures
    for (int k = 0; k < n; ++k) {
        const double x1 = rule.nodes[k], x2 = rule.nodes[n + k];
        SignedLog c1(1, mop.log_scale1 + std::log(christoffel(mop.varying1, n, x1)) -
                            log_prod(mop.q_zeros, x1).first);
        SignedLog c2(1, mop.log_scale2 + std::log(christoffel(mop.varying2, n, x2)) -
                            log_prod(mop.p_zeros, x2).first);
        note("christoffel route", 1, k, rel_gap(rule.lambda1[k], c1));
        note("christoffel route", 2, n + k, rel_gap(rule.lambda2[n + k], c2));
    }
    // direct Lagrange integration wherever its sum is well conditioned
    for (int family = 1; family <= 2; ++family) {
        const auto& lam = family == 1 ? rule.lambda1 : rule.lambda2;
        for (int k = 0; k < 2 * n; ++k) {
            auto [w, cond] = lagrange_weight(system, rule.nodes, family, k);
            if (cond <= 1e4) note("direct route", family, k, rel_gap(lam[k], w));
        }
    }
    return rule;
}

SignReport verify_signs(const SimulRule& rule) {
    SignReport r;
    const int n = rule.n;
    auto expect = [&](const char* cond, int family, int idx0, int want) {
        const auto& lam = family == 1 ? rule.lambda1 : rule.lambda2;
        ++r.checked;
        const int got = idx0 < static_cast<int>(lam.size()) ? lam[idx0].sign : 0;
        if (got != want) r.failures.push_back({cond, family, idx0 + 1, want, got});
    };
    for (int k = 1; k <= n; ++k) {
        expect("positive", 1, k - 1, 1);
        expect("positive", 2, n + k - 1, 1);
        expect("alternating", 1, n + k - 1, (k - 1) % 2 == 0 ? 1 : -1);
        expect("alternating", 2, k - 1, (n - k) % 2 == 0 ? 1 : -1);
    }
    if (n >= 1) {
        expect("nearest", 2, n - 1, 1);
        expect("nearest", 1, n, 1);
    }
    return r;
}

double monomial_error(const AngelescoSystem& system, const SimulRule& rule, int degree) {
    double worst = 0.0;
    for (int family = 1; family <= 2; ++family) {
        const MeasureSpec& mu = system.mu(family);
        const int order = std::max(degree / 2 + 2, mu.factor.trivial() ? 1 : 40);
        GaussRule exact = base_gauss_rule(mu, order);
        GaussRule wide = base_gauss_rule(mu, std::max(order, 40));
        KahanSum ref, scale, quad;
        for (std::size_t i = 0; i < exact.size(); ++i) ref.add(exact.weights[i] * std::pow(exact.nodes[i], degree));
        for (std::size_t i = 0; i < wide.size(); ++i)
            scale.add(wide.weights[i] * std::pow(std::fabs(wide.nodes[i]), degree));
        const auto& lam = family == 1 ? rule.lambda1 : rule.lambda2;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) quad.add(lam[i].value * std::pow(rule.nodes[i], degree));
        worst = std::max(worst, std::fabs(quad.value() - ref.value()) / scale.value());
    }
    return worst;
}

double verify_exactness(const AngelescoSystem& system, const SimulRule& rule, int max_degree) {
    double worst = 0.0;
    for (int d = 0; d <= max_degree; ++d) worst = std::max(worst, monomial_error(system, rule, d));
    return worst;
}

std::size_t CheckReport::violations() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const BoundCheck& c) { return !c.ok(); }));
}

double CheckReport::worst_margin() const {
    double w = kInf;
    for (const auto& c : checks) w = std::min(w, c.margin());
    return w;
}

double AbsMonotone::operator()(double x) const {
    switch (kind) {
        case ExpC: return std::exp(param * x);
        case InvPole: return 1.0 / (param - x);
        default: return 1.0;
    }
}

AbsMonotone AbsMonotone::parse(const std::string& id, double param) {
    AbsMonotone g;
    if (id == "one") {
        g.kind = One;
    } else if (id == "exp_c") {
        if (!(param >= 0.0)) throw ParameterError("exp_c needs c >= 0");
        g.kind = ExpC;
    } else if (id == "inv_pole") {
        g.kind = InvPole;
    } else {
        throw ParameterError("unknown g '" + id + "'");
    }
    g.param = param;
    return g;
}

std::string AbsMonotone::id() const {
    switch (kind) {
        case ExpC: return "exp_c";
        case InvPole: return "inv_pole";
        default: return "one";
    }
}

CheckReport pcms_check(const AngelescoSystem& system, const SimulRule& rule, const AbsMonotone& g, double slack_rel) {
    const MeasureSpec& mu = system.mu1;
    const double b1 = mu.interval.b, a1 = mu.interval.a;
    if (g.kind == AbsMonotone::InvPole && !(g.param > b1))
        throw ParameterError("inv_pole needs B > b1");
    if (g.kind == AbsMonotone::ExpC && !(g.param >= 0.0)) throw ParameterError("exp_c needs c >= 0");

    const int n = rule.n;
    auto gf = [&](double x) { return g(x); };
    const double gmass = partial_integral(mu, gf, a1, b1);
    const double slack = slack_rel * gmass;
    const double mass = measure_mass(mu);
    const auto& x = rule.nodes;
    std::vector<double> lam(n);
    for (int k = 0; k < n; ++k) lam[k] = rule.lambda1[k].value;

    CheckReport r;
    double below = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double integral = partial_integral(mu, gf, a1, x[l - 1]);
        const double upto = below + lam[l - 1] * g(x[l - 1]);
        r.checks.push_back({"pms1_lower", 1, l, below, integral, slack});
        r.checks.push_back({"pms1_upper", 1, l, integral, upto, slack});
        below = upto;
    }
    auto one = [](double) { return 1.0; };
    for (int l = 2; l <= n - 1; ++l) {
        r.checks.push_back({"pms2", 1, l, lam[l - 1], partial_integral(mu, one, x[l - 2], x[l]), slack_rel * mass});
        r.checks.push_back({"pms3", 1, l, partial_integral(mu, one, x[l - 1], x[l]), lam[l - 1] + lam[l],
                            slack_rel * mass});
    }
    KahanSum tot;
    for (double v : lam) tot.add(v);
    r.checks.push_back({"pms4", 1, n, tot.value(), mass, slack_rel * mass});
    return r;
}

double mrs_finite(const std::vector<double>& q_zeros, double a1, double b1, double level) {
    const double n = static_cast<double>(q_zeros.size());
    auto lhs = [&](double b) {
        double s = 0.0;
        for (double t : q_zeros) s += std::sqrt((t - a1) / (t - b));
        return s / n;
    };
    if (lhs(b1) <= level) return b1;
    double lo = a1, hi = b1;  // lhs(a1) = 1 < level
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (lhs(mid) > level ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double mrs_finite(const MopPair& mop, double a1, double b1, double level) {
    return mrs_finite(mop.q_zeros, a1, b1, level);
}

ChristoffelReport christoffel_bounds_check(const AngelescoSystem& system, const SimulRule& rule) {
    const int n = rule.n;
    const int m = (3 * n + 1) / 2;
    const Interval& i1 = system.mu1.interval;
    ChristoffelReport rep;
    RecurrenceTable t = measure_recurrence(system.mu1, m);
    for (int j = 0; j < n; ++j) {
        const double lam = rule.lambda1[j].value;
        const double bound = christoffel(t, m, rule.nodes[j]);
        // equality is attained at n = 1, so allow rounding
        rep.lower_bound.checks.push_back({"christoffel_lower", 1, j + 1, bound, lam, 1e-12 * bound});
    }
    std::vector<double> q(rule.nodes.begin() + n, rule.nodes.end());
    rep.b_star = mrs_finite(q, i1.a, i1.b);
    const double c = 0.5 * (i1.a + rep.b_star), h = 0.25 * (rep.b_star - i1.a);
    rep.min_scaled = kInf;
    rep.max_scaled = -kInf;
    for (int j = 0; j < n; ++j) {
        if (std::fabs(rule.nodes[j] - c) > h) continue;
        const double v = n * rule.lambda1[j].value;
        rep.min_scaled = std::min(rep.min_scaled, v);
        rep.max_scaled = std::max(rep.max_scaled, v);
        ++rep.interior;
    }
    if (rep.interior == 0) rep.min_scaled = rep.max_scaled = 0.0;
    return rep;
}

SpacingReport spacing_check(const AngelescoSystem& system, const SimulRule& rule) {
    const int n = rule.n;
    auto side = [&](int off, const Interval& iv) {
        SpacingSide s;
        s.min_two_step = kInf;
        s.max_one_step = 0.0;
        const double c = iv.center(), h = 0.5 * iv.half();
        for (int j = 1; j + 1 < n; ++j) {
            const double x = rule.nodes[off + j];
            if (std::fabs(x - c) > h) continue;
            ++s.samples;
            s.min_two_step = std::min(s.min_two_step, n * (rule.nodes[off + j + 1] - rule.nodes[off + j - 1]));
            s.max_one_step = std::max(s.max_one_step, n * std::max(rule.nodes[off + j + 1] - x, x - rule.nodes[off + j - 1]));
        }
        if (s.samples == 0) s.min_two_step = 0.0;
        return s;
    };
    SpacingReport r;
    r.side1 = side(0, system.mu1.interval);
    r.side2 = side(n, system.mu2.interval);
    return r;
}

AltBound alt_weight_bound(const AngelescoSystem& system, const MopPair& mop, const SimulRule& rule, int family,
                          int j) {
    if (system.touching()) throw UnsupportedError("alternating-weight bounds need b1 < a2");
    const int n = rule.n;
    if (family != 1 && family != 2) throw ParameterError("family must be 1 or 2");
    if (j < 1 || j > n) throw std::out_of_range("alternating weight index " + std::to_string(j) + " out of range");
    const double a1 = system.mu1.interval.a, b1 = system.mu1.interval.b;
    const double a2 = system.mu2.interval.a, b2 = system.mu2.interval.b;
    // family 1 looks at x_{n+j}; family 2 mirrors onto x_j with the roles of p and q swapped
    const int idx = family == 1 ? n + j - 1 : j - 1;
    const double x = rule.nodes[idx];
    const auto& near = family == 1 ? mop.p_zeros : mop.q_zeros;  // polynomial squared in the bound
    const auto& far = family == 1 ? mop.q_zeros : mop.p_zeros;   // polynomial differentiated
    const double lg = family == 1 ? mop.log_gamma1 : mop.log_gamma2;
    const double lpp = 2.0 * log_prod(near, x).first;
    double ld = 0.0;
    for (double z : far)
        if (z != x) ld += std::log(std::fabs(x - z));
    const auto& lam = family == 1 ? rule.lambda1 : rule.lambda2;
    AltBound r;
    r.log_middle = lam[idx].log_abs + ld;
    r.log_lower = -lpp - 2.0 * lg - std::log(std::fabs(b2 - a1));
    r.log_upper = -lpp - 2.0 * lg - std::log(std::fabs(a2 - b1));
    return r;
}

CheckReport alt_weight_bounds_check(const AngelescoSystem& system, const MopPair& mop, const SimulRule& rule,
                                    double log_tol) {
    CheckReport r;
    for (int family = 1; family <= 2; ++family)
        for (int j = 1; j <= rule.n; ++j) {
            AltBound b = alt_weight_bound(system, mop, rule, family, j);
            r.checks.push_back({"alt_lower", family, j, b.log_lower, b.log_middle, log_tol});
            r.checks.push_back({"alt_upper", family, j, b.log_middle, b.log_upper, log_tol});
        }
    return r;
}

std::vector<std::pair<double, double>> weight_rate(const SimulRule& rule, int side) {
    if (side != 1 && side != 2) throw ParameterError("side must be 1 or 2");
    const int n = rule.n;
    std::vector<std::pair<double, double>> out;
    for (int j = 0; j < n; ++j) {
        const int idx = side == 1 ? n + j : j;
        const auto& lam = side == 1 ? rule.lambda1 : rule.lambda2;
        out.emplace_back(rule.nodes[idx], lam[idx].log_abs / n);
    }
    return out;
}

namespace {

nlohmann::json weights_json(const std::vector<SignedLog>& w) {
    auto a = nlohmann::json::array();
    for (const auto& v : w) {
        nlohmann::json e{{"sign", v.sign}};
        if (v.sign == 0) e["log"] = nullptr; else e["log"] = v.log_abs;
        a.push_back(e);
    }
    return a;
}

std::vector<SignedLog> weights_from(const nlohmann::json& a) {
    std::vector<SignedLog> w;
    for (const auto& e : a) {
        const int s = e.at("sign").get<int>();
        if (s == 0 || e.at("log").is_null()) w.emplace_back();
        else w.emplace_back(s, e.at("log").get<double>());
    }
    return w;
}

}  // namespace

nlohmann::json to_json_value(const SimulRule& rule) {
    return nlohmann::json{{"n", rule.n},
                          {"nodes", rule.nodes},
                          {"lambda1", weights_json(rule.lambda1)},
                          {"lambda2", weights_json(rule.lambda2)}};
}

SimulRule simul_rule_from_json(const nlohmann::json& j) {
    SimulRule r;
    try {
        r.n = j.at("n").get<int>();
        r.nodes = j.at("nodes").get<std::vector<double>>();
        r.lambda1 = weights_from(j.at("lambda1"));
        r.lambda2 = weights_from(j.at("lambda2"));
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("bad rule JSON: ") + e.what());
    }
    const std::size_t N = 2 * static_cast<std::size_t>(r.n);
    if (r.n < 1 || r.nodes.size() != N || r.lambda1.size() != N || r.lambda2.size() != N)
        throw ParameterError("rule JSON: sizes do not match 2n");
    if (!std::is_sorted(r.nodes.begin(), r.nodes.end())) throw ParameterError("rule JSON: nodes not increasing");
    return r;
}

std::string to_csv(const SimulRule& rule) {
    std::ostringstream os;
    os << "k,x_k,sign1,log1,sign2,log2\n";
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        os << k + 1 << ',' << fmt17(rule.nodes[k]) << ',' << rule.lambda1[k].sign << ','
           << fmt17(rule.lambda1[k].log_abs) << ',' << rule.lambda2[k].sign << ',' << fmt17(rule.lambda2[k].log_abs)
           << '\n';
    }
    return os.str();
}

}  // namespace sgq
