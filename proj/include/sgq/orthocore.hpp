#pragma once

#include <vector>

#include "sgq/measure.hpp"

namespace sgq {

// Recurrence through degree n of the discrete measure sum_i w_i f_i delta(x_i).
// The result has n+1 entries: alpha_0..alpha_n and mass, beta_1..beta_n.
RecurrenceTable stieltjes_varying(const GaussRule& base, const std::vector<double>& factor_values,
                                  int n);

// n-point Gauss rule from the Jacobi matrix. With polish set, each node gets
// Newton steps on pi_n before the weights are recomputed.
GaussRule gauss_from_recurrence(const RecurrenceTable& table, int n, bool polish = false);

// p_0(x)..p_{n-1}(x), orthonormal.
std::vector<double> orthonormal_eval(const RecurrenceTable& table, int n, double x);

double christoffel(const RecurrenceTable& table, int n, double x);

// log of the leading coefficient of the orthonormal polynomial of degree n.
double log_leading_coefficient(const RecurrenceTable& table, int n);

}  // namespace sgq
