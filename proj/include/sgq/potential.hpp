#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "sgq/angelesco.hpp"
#include "sgq/measure.hpp"

namespace sgq {

// Probability measure on `support` stored on the G-point Chebyshev grid
//   x_i = c - h cos((2i-1) pi / 2G)
// as density(x) = phi(x) / (pi sqrt((x-a)(b-x))).
struct DiscreteMeasure {
    Interval support;
    std::vector<double> grid;
    std::vector<double> density;
    std::vector<double> phi;
    std::vector<double> cheb;  // Chebyshev coefficients of phi on the support, c_0 halved
    double mass = 0.0;

    static DiscreteMeasure from_phi(const Interval& support, std::vector<double> phi);
    static DiscreteMeasure arcsine(const Interval& support, int G);

    int size() const { return static_cast<int>(grid.size()); }
    double node_weight(int i) const { return phi[i] / static_cast<double>(grid.size()); }
    double integrate(const std::function<double(double)>& f) const;
    DiscreteMeasure mirrored() const;
};

double log_potential(const DiscreteMeasure& nu, double x);
double log_potential(const DiscreteMeasure& nu, std::complex<double> z);
double self_energy(const DiscreteMeasure& nu);
double mutual_energy(const DiscreteMeasure& nu1, const DiscreteMeasure& nu2);

enum class CaseTag { I, II, III };
std::string to_string(CaseTag t);

struct EquilibriumOptions {
    int grid_size = 256;
    double tol = 1e-8;
    int max_iter = 500;
};

struct EquilibriumSolution {
    DiscreteMeasure nu1, nu2;
    double ell1 = 0.0, ell2 = 0.0;
    double b_star = 0.0, a_star = 0.0;
    CaseTag case_tag = CaseTag::I;
    int iterations = 0;
    double residual = 0.0;
    bool damped = false;
    std::vector<double> energy;  // after every half step
    Interval i1, i2;
};

EquilibriumSolution solve_vector_equilibrium(const Interval& i1, const Interval& i2,
                                             const EquilibriumOptions& opt = {});

double rate_function(const EquilibriumSolution& sol, int which, double x);
double rate_function(const EquilibriumSolution& sol, int which, std::complex<double> z);

// Root b of sum_i w_i sqrt((s_i - a1)/(s_i - b)) = level on (a1,b1], or b1.
double mrs_limit(const std::vector<double>& nodes, const std::vector<double>& weights, double a1, double b1,
                 double level = 3.0);
double mrs_limit(const DiscreteMeasure& nu2, double a1, double b1, double level = 3.0);

enum class CubicSet { Example1, Example2 };

struct CubicCoefficients {
    double q0, q1, q2;
};
CubicCoefficients phi_cubic_coefficients(CubicSet set, double x);

// Real roots of t^3 + c2 t^2 + c1 t + c0, sorted, Newton-polished.
std::vector<double> real_cubic_roots(double c2, double c1, double c0);

std::vector<double> phi_cubic(CubicSet set, double x);
std::vector<double> kalyagin_cubic(double y);

// Fits exp(-U(x; nu)) against kappa * (a real root of the cubic) by anchoring
// the branch and the constant kappa at `anchor`, then reports the largest
// deviation at the sample points.
struct BranchMatch {
    double kappa = 0.0;
    int branch = 0;  // index into the sorted real roots at the anchor
    double max_deviation = 0.0;
    int samples = 0;
};
BranchMatch cubic_branch_match(const DiscreteMeasure& nu, CubicSet set, double anchor,
                               const std::vector<double>& samples);

struct ZeroDistributionEntry {
    std::string f;
    double empirical1, reference1, empirical2, reference2;
    double discrepancy1() const { return std::abs(empirical1 - reference1); }
    double discrepancy2() const { return std::abs(empirical2 - reference2); }
};
std::vector<ZeroDistributionEntry> zero_distribution_check(const MopPair& mop, const EquilibriumSolution& sol);

nlohmann::json to_json_value(const EquilibriumSolution& sol);
// CSV with columns x,G1,G2 on `samples` evenly spaced points of [lo,hi]
std::string rate_csv(const EquilibriumSolution& sol, double lo, double hi, int samples);

}  // namespace sgq
