#include "sgq/measure.hpp"

#include <cmath>
#include <map>

#include "sgq/errors.hpp"
#include "sgq/orthocore.hpp"

namespace sgq {

Interval::Interval(double lo, double hi) : a(lo), b(hi) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ParameterError("interval needs finite endpoints with a < b");
}

SmoothFactor SmoothFactor::lookup(const std::string& id) {
    static const std::map<std::string, std::function<double(double)>> registry = {
        {"none", [](double) { return 1.0; }},
        {"one", [](double) { return 1.0; }},
        {"exp", [](double x) { return std::exp(x); }},
        {"expneg", [](double x) { return std::exp(-x); }},
        {"quad", [](double x) { return 1.0 + x * x; }},
    };
    auto it = registry.find(id);
    if (it == registry.end()) throw ParameterError("unknown smooth factor '" + id + "'");
    return SmoothFactor{id, it->second};
}

MeasureSpec::MeasureSpec(Interval iv, double alpha_, double beta_, const std::string& factor_id)
    : interval(iv), alpha(alpha_), beta(beta_), factor(SmoothFactor::lookup(factor_id)) {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw ParameterError("Jacobi exponents must exceed -1");
}

double MeasureSpec::weight(double x) const {
    if (x < interval.a || x > interval.b) return 0.0;
    return std::pow(interval.b - x, alpha) * std::pow(x - interval.a, beta) * factor(x);
}

AngelescoSystem::AngelescoSystem(MeasureSpec m1, MeasureSpec m2) : mu1(std::move(m1)), mu2(std::move(m2)) {
    if (mu1.interval.b > mu2.interval.a)
        throw ParameterError("mu1 must lie to the left of mu2 (b1 <= a2)");
}

RecurrenceTable jacobi_recurrence(double alpha, double beta, int count) {
    if (!(alpha > -1.0) || !(beta > -1.0)) throw ParameterError("Jacobi exponents must exceed -1");
    if (count < 1) throw ParameterError("jacobi_recurrence needs count >= 1");
    const double a = alpha, b = beta, s = a + b;
    RecurrenceTable t;
    t.alphas.resize(count);
    t.betas.resize(count);
    t.betas[0] = std::exp((s + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                          std::lgamma(s + 2.0));
    t.alphas[0] = (b - a) / (s + 2.0);
    for (int k = 1; k < count; ++k) {
        const double kk = k, two = 2.0 * kk + s;
        t.alphas[k] = (b * b - a * a) / (two * (two + 2.0));
        if (k == 1)
            t.betas[k] = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
        else
            t.betas[k] = 4.0 * kk * (kk + a) * (kk + b) * (kk + s) /
                         (two * two * (two + 1.0) * (two - 1.0));
    }
    return t;
}

RecurrenceTable shift_recurrence(const RecurrenceTable& table, const Interval& to, double weight_degree) {
    const double h = to.half(), c = to.center();
    RecurrenceTable t = table;
    for (auto& al : t.alphas) al = h * al + c;
    for (std::size_t k = 1; k < t.betas.size(); ++k) t.betas[k] *= h * h;
    if (!t.betas.empty()) t.betas[0] *= std::pow(h, 1.0 + weight_degree);
    return t;
}

namespace {

RecurrenceTable jacobi_on(const MeasureSpec& mu, int count) {
    return shift_recurrence(jacobi_recurrence(mu.alpha, mu.beta, count), mu.interval, mu.alpha + mu.beta);
}

}  // namespace

RecurrenceTable measure_recurrence(const MeasureSpec& mu, int count) {
    if (mu.factor.trivial()) return jacobi_on(mu, count);
    // discretize on a finer Jacobi rule and run Stieltjes
    const int fine = 2 * count + 40;
    GaussRule g = gauss_from_recurrence(jacobi_on(mu, fine), fine);
    std::vector<double> f(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) f[i] = mu.factor(g.nodes[i]);
    RecurrenceTable t = stieltjes_varying(g, f, count - 1);
    return t;
}

GaussRule base_gauss_rule(const MeasureSpec& mu, int m) {
    if (m < 1) throw ParameterError("base_gauss_rule needs m >= 1");
    return gauss_from_recurrence(measure_recurrence(mu, m), m);
}

double measure_mass(const MeasureSpec& mu) {
    if (mu.factor.trivial()) return jacobi_on(mu, 1).mass();
    return measure_recurrence(mu, 1).mass();
}

double partial_integral(const MeasureSpec& mu, const std::function<double(double)>& g, double lo,
                        double hi, int order) {
    const Interval& iv = mu.interval;
    lo = std::max(lo, iv.a);
    hi = std::min(hi, iv.b);
    if (!(lo < hi)) return 0.0;

    auto whole = [&]() {
        GaussRule r = gauss_from_recurrence(jacobi_on(MeasureSpec(iv, mu.alpha, mu.beta), order), order);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * mu.factor(r.nodes[i]) * g(r.nodes[i]);
        return s;
    };
    // integral over [a, x]: Jacobi(0, beta) on [a,x] carries the left singularity
    auto left = [&](double x) {
        if (x >= iv.b) return whole();
        Interval sub(iv.a, x);
        auto t = shift_recurrence(jacobi_recurrence(0.0, mu.beta, order), sub, mu.beta);
        GaussRule r = gauss_from_recurrence(t, order);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double y = r.nodes[i];
            s += r.weights[i] * std::pow(iv.b - y, mu.alpha) * mu.factor(y) * g(y);
        }
        return s;
    };
    auto right = [&](double x) {
        if (x <= iv.a) return whole();
        Interval sub(x, iv.b);
        auto t = shift_recurrence(jacobi_recurrence(mu.alpha, 0.0, order), sub, mu.alpha);
        GaussRule r = gauss_from_recurrence(t, order);
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            const double y = r.nodes[i];
            s += r.weights[i] * std::pow(y - iv.a, mu.beta) * mu.factor(y) * g(y);
        }
        return s;
    };
    auto cumulative = [&](double x) {
        if (x <= iv.a) return 0.0;
        if (x >= iv.b) return whole();
        // the complement keeps (b-y)^alpha off the sub-rule; with alpha = 0 go direct
        if (x <= iv.center() || mu.alpha == 0.0) return left(x);
        return whole() - right(x);
    };
    if (lo == iv.a) return cumulative(hi);
    if (hi == iv.b) return right(lo);
    // interior piece away from both endpoints when possible
    if (hi <= iv.center()) return left(hi) - left(lo);
    if (lo >= iv.center()) return right(lo) - right(hi);
    return cumulative(hi) - cumulative(lo);
}

void to_json(nlohmann::json& j, const Interval& iv) { j = nlohmann::json::array({iv.a, iv.b}); }

void from_json(const nlohmann::json& j, Interval& iv) {
    if (!j.is_array() || j.size() != 2) throw ParameterError("interval must be [a, b]");
    iv = Interval(j.at(0).get<double>(), j.at(1).get<double>());
}

void to_json(nlohmann::json& j, const MeasureSpec& mu) {
    j = nlohmann::json{{"interval", mu.interval}, {"alpha", mu.alpha}, {"beta", mu.beta}, {"factor", mu.factor.id}};
}

void from_json(const nlohmann::json& j, MeasureSpec& mu) {
    if (!j.is_object()) throw ParameterError("measure must be an object");
    if (!j.contains("interval")) throw ParameterError("measure.interval missing");
    Interval iv = j.at("interval").get<Interval>();
    double al = j.value("alpha", 0.0), be = j.value("beta", 0.0);
    std::string f = j.value("factor", std::string("none"));
    mu = MeasureSpec(iv, al, be, f);
}

void to_json(nlohmann::json& j, const AngelescoSystem& s) { j = nlohmann::json{{"mu1", s.mu1}, {"mu2", s.mu2}}; }

void from_json(const nlohmann::json& j, AngelescoSystem& s) {
    if (!j.is_object() || !j.contains("mu1") || !j.contains("mu2"))
        throw ParameterError("system needs mu1 and mu2");
    s = AngelescoSystem(j.at("mu1").get<MeasureSpec>(), j.at("mu2").get<MeasureSpec>());
}

}  // namespace sgq
