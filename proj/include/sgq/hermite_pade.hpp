#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "sgq/angelesco.hpp"
#include "sgq/potential.hpp"

namespace sgq {

using cplx = std::complex<double>;

// Q/P and R/P in partial-fraction form; holds its own copy of the rule.
class HPApproximant {
public:
    explicit HPApproximant(SimulRule rule);
    const SimulRule& rule() const { return rule_; }

private:
    SimulRule rule_;
};

std::pair<cplx, cplx> hp_eval(const HPApproximant& approx, cplx z);

// Cauchy transform of mu at z using an order-point Gauss rule, checked
// against twice the order.
cplx markov_eval(const MeasureSpec& mu, cplx z, int order = 32);

struct HPErrorRow {
    int n = 0;
    double direct1 = 0.0, direct2 = 0.0;  // |g_j - approximant| by subtraction
    double error1 = 0.0, error2 = 0.0;    // same quantity from the remainder integral
    double rate1 = 0.0, rate2 = 0.0;      // (1/n) log error_j
};

std::vector<HPErrorRow> hp_error_rate(const AngelescoSystem& system, cplx z, const std::vector<int>& n_values,
                                      int workers = 1);

// log|g_j(z) - approximant_j(z)| from the remainder integral of P q / (z-x)
double hp_log_remainder(const AngelescoSystem& system, const MopPair& mop, cplx z, int family);

struct TestFunction {
    std::string id;
    std::function<double(double)> f;
    int degree = -1;  // polynomial degree, -1 otherwise
    double kink = std::numeric_limits<double>::quiet_NaN();

    static TestFunction lookup(const std::string& id);
};

// Reference for the integral of f dmu over [lo,hi].
double reference_integral(const MeasureSpec& mu, const TestFunction& f, double lo, double hi);

enum class ConvergenceMode { Restricted, Full, Both };
ConvergenceMode parse_mode(const std::string& s);

struct ConvergenceOptions {
    ConvergenceMode mode = ConvergenceMode::Both;
    // Upper end of the restricted reference on the first interval and lower end on
    // the second; NaN means the full interval.
    double b_star = std::numeric_limits<double>::quiet_NaN();
    double a_star = std::numeric_limits<double>::quiet_NaN();
    int workers = 1;
};

struct ConvergenceRow {
    int n = 0;
    double error_restricted_1, error_full_1, error_restricted_2, error_full_2;
    double rate_1, rate_2;
};

std::vector<ConvergenceRow> quadrature_convergence(const AngelescoSystem& system, const std::string& f_id,
                                                   const std::vector<int>& n_values,
                                                   const ConvergenceOptions& opt = {});

std::string to_csv(const std::vector<ConvergenceRow>& rows);
std::string to_csv(const std::vector<HPErrorRow>& rows);

// Runs job(i) for i in [0,count) on up to `workers` threads.
void parallel_for(int count, int workers, const std::function<void(int)>& job);

}  // namespace sgq
