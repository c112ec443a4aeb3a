#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sgq/measure.hpp"
#include "sgq/signed_log.hpp"

namespace sgq {

constexpr int kMaxDegree = 64;

struct MopOptions {
    double tol = 0.0;  // <= 0 selects 1e-13 * max interval width
    int max_iter = 200;
};

struct MopPair {
    int n = 0;
    std::vector<double> p_zeros;  // in (a1,b1)
    std::vector<double> q_zeros;  // in (a2,b2)
    double gamma1 = 0.0, gamma2 = 0.0;          // may overflow; logs are authoritative
    double log_gamma1 = 0.0, log_gamma2 = 0.0;
    int iterations = 0;
    double node_residual = 0.0;
    double orth_residual = 0.0;
    bool converged = false;
    bool damped = false;

    // Recurrences of q_n dmu1 / S1 and |p_n| dmu2 / S2 with log S stored.
    RecurrenceTable varying1, varying2;
    double log_scale1 = 0.0, log_scale2 = 0.0;
};

struct SimulRule {
    int n = 0;
    std::vector<double> nodes;  // 2n, increasing
    std::vector<SignedLog> lambda1, lambda2;
    std::vector<std::string> warnings;
    double crosscheck = 0.0;  // largest relative disagreement among the routes that were compared
};

MopPair solve_mop(const AngelescoSystem& system, int n, const MopOptions& opt = {});

// Rebuilds the diagnostic parts of a MopPair from a given set of 2n zeros.
MopPair mop_from_nodes(const AngelescoSystem& system, const std::vector<double>& nodes);

SimulRule quad_weights(const AngelescoSystem& system, const MopPair& mop);

// Direct integral of the Lagrange basis polynomial l_k against mu_j (family j),
// with the condition number of the underlying sum.
std::pair<SignedLog, double> lagrange_weight(const AngelescoSystem& system, const std::vector<double>& nodes,
                                             int family, int k);

struct SignFailure {
    std::string condition;
    int family;
    int index;  // 1-based
    int expected;
    int actual;
};

struct SignReport {
    int checked = 0;
    std::vector<SignFailure> failures;
    bool ok() const { return failures.empty(); }
};

SignReport verify_signs(const SimulRule& rule);

double monomial_error(const AngelescoSystem& system, const SimulRule& rule, int degree);
double verify_exactness(const AngelescoSystem& system, const SimulRule& rule, int max_degree);

// lhs <= rhs + tol is the tested relation
struct BoundCheck {
    std::string name;
    int family = 1;
    int index = 0;  // 1-based
    double lhs = 0.0;
    double rhs = 0.0;
    double tol = 0.0;
    bool ok() const { return lhs <= rhs + tol; }
    double margin() const { return rhs - lhs; }
};

struct CheckReport {
    std::vector<BoundCheck> checks;
    std::size_t violations() const;
    bool ok() const { return violations() == 0; }
    double worst_margin() const;
};

struct AbsMonotone {
    enum Kind { One, ExpC, InvPole } kind = One;
    double param = 0.0;  // c for ExpC, B for InvPole

    double operator()(double x) const;
    static AbsMonotone parse(const std::string& id, double param = 0.0);
    std::string id() const;
};

CheckReport pcms_check(const AngelescoSystem& system, const SimulRule& rule, const AbsMonotone& g,
                       double slack_rel = 1e-12);

struct ChristoffelReport {
    CheckReport lower_bound;
    double b_star = 0.0;
    int interior = 0;  // nodes in the middle half of [a1, b*]
    double min_scaled = 0.0, max_scaled = 0.0;  // of n * lambda1_j there
};

ChristoffelReport christoffel_bounds_check(const AngelescoSystem& system, const SimulRule& rule);

struct SpacingSide {
    int samples = 0;
    double min_two_step = 0.0;  // n (x_{j+1} - x_{j-1})
    double max_one_step = 0.0;  // n (x_{j+1} - x_j)
};

struct SpacingReport {
    SpacingSide side1, side2;
    bool empty() const { return side1.samples == 0 && side2.samples == 0; }
};

SpacingReport spacing_check(const AngelescoSystem& system, const SimulRule& rule);

// Root b of (1/n) sum_j sqrt((t_j - a1)/(t_j - b)) = level on (a1, b1], or b1.
double mrs_finite(const std::vector<double>& q_zeros, double a1, double b1, double level = 3.0);
double mrs_finite(const MopPair& mop, double a1, double b1, double level = 3.0);

struct AltBound {
    double log_lower, log_middle, log_upper;
};

AltBound alt_weight_bound(const AngelescoSystem& system, const MopPair& mop, const SimulRule& rule,
                          int family, int j);
CheckReport alt_weight_bounds_check(const AngelescoSystem& system, const MopPair& mop, const SimulRule& rule,
                                    double log_tol = 1e-9);

// (x, (1/n) log|lambda|) over the far interval of the requested family.
std::vector<std::pair<double, double>> weight_rate(const SimulRule& rule, int side);

nlohmann::json to_json_value(const SimulRule& rule);
SimulRule simul_rule_from_json(const nlohmann::json& j);
std::string to_csv(const SimulRule& rule);

}  // namespace sgq
