#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sgq {

struct Interval {
    double a = -1.0;
    double b = 1.0;

    Interval() = default;
    Interval(double lo, double hi);

    double width() const { return b - a; }
    double center() const { return 0.5 * (a + b); }
    double half() const { return 0.5 * (b - a); }
    bool contains(double x) const { return x >= a && x <= b; }
};

// Positive smooth multiplier of a Jacobi weight, looked up by name.
struct SmoothFactor {
    std::string id = "none";
    std::function<double(double)> fn;

    static SmoothFactor lookup(const std::string& id);
    bool trivial() const { return id == "none" || id == "one"; }
    double operator()(double x) const { return fn ? fn(x) : 1.0; }
};

// Weight (b-x)^alpha (x-a)^beta * factor(x) on [a,b].
struct MeasureSpec {
    Interval interval;
    double alpha = 0.0;
    double beta = 0.0;
    SmoothFactor factor = SmoothFactor::lookup("none");

    MeasureSpec() = default;
    MeasureSpec(Interval iv, double alpha_, double beta_, const std::string& factor_id = "none");

    double weight(double x) const;
    static MeasureSpec legendre(double a, double b) { return MeasureSpec(Interval(a, b), 0.0, 0.0); }
};

struct AngelescoSystem {
    MeasureSpec mu1;
    MeasureSpec mu2;

    AngelescoSystem() = default;
    AngelescoSystem(MeasureSpec m1, MeasureSpec m2);

    bool touching() const { return mu1.interval.b == mu2.interval.a; }
    double span() const { return mu2.interval.b - mu1.interval.a; }
    const MeasureSpec& mu(int j) const { return j == 1 ? mu1 : mu2; }
};

// Monic three-term recurrence  pi_{k+1} = (x - alpha_k) pi_k - beta_k pi_{k-1}.
// betas[0] holds the total mass, betas[k] = beta_k for k >= 1.
struct RecurrenceTable {
    std::vector<double> alphas;
    std::vector<double> betas;

    std::size_t size() const { return alphas.size(); }
    double mass() const { return betas.empty() ? 0.0 : betas[0]; }
};

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }
};

RecurrenceTable jacobi_recurrence(double alpha, double beta, int count);

// Affine transport from [-1,1] to `to`. weight_degree is alpha+beta of the
// Jacobi weight; it only affects the mass.
RecurrenceTable shift_recurrence(const RecurrenceTable& table, const Interval& to,
                                 double weight_degree = 0.0);

// Recurrence of the measure itself (exact for pure Jacobi, discretized otherwise).
RecurrenceTable measure_recurrence(const MeasureSpec& mu, int count);

GaussRule base_gauss_rule(const MeasureSpec& mu, int m);

// Total mass of mu.
double measure_mass(const MeasureSpec& mu);

// Integral of g dmu over [lo,hi] within mu's interval, using order-point
// Gauss-Jacobi rules anchored at whichever endpoint is closer.
double partial_integral(const MeasureSpec& mu, const std::function<double(double)>& g,
                        double lo, double hi, int order = 64);

void to_json(nlohmann::json& j, const Interval& iv);
void from_json(const nlohmann::json& j, Interval& iv);
void to_json(nlohmann::json& j, const MeasureSpec& mu);
void from_json(const nlohmann::json& j, MeasureSpec& mu);
void to_json(nlohmann::json& j, const AngelescoSystem& s);
void from_json(const nlohmann::json& j, AngelescoSystem& s);

}  // namespace sgq
