#include "sgq/orthocore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "sgq/errors.hpp"

namespace sgq {

RecurrenceTable stieltjes_varying(const GaussRule& base, const std::vector<double>& factor_values, int n) {
    const std::size_t m = base.size();
    if (n < 0) throw ParameterError("stieltjes_varying needs n >= 0");
    if (factor_values.size() != m) throw ParameterError("factor_values must match the base rule");
    if (m <= static_cast<std::size_t>(n))
        throw NumericError("base rule too small for the requested degree");

    double mass = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(factor_values[i] > 0.0)) throw NumericError("varying factor not positive at a base node");
        mass += base.weights[i] * factor_values[i];
    }
    RecurrenceTable t;
    t.alphas.assign(n + 1, 0.0);
    t.betas.assign(n + 1, 0.0);
    t.betas[0] = mass;

    // columns of V are sqrt(w f) * p_k(x_i), orthonormal in R^m
    std::vector<std::vector<double>> V(n + 1, std::vector<double>(m));
    for (std::size_t i = 0; i < m; ++i) V[0][i] = std::sqrt(base.weights[i] * factor_values[i] / mass);

    auto rayleigh = [&](const std::vector<double>& v) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += base.nodes[i] * v[i] * v[i];
        return s;
    };
    t.alphas[0] = rayleigh(V[0]);
    std::vector<double> r(m);
    for (int k = 0; k < n; ++k) {
        const double sb = k > 0 ? std::sqrt(t.betas[k]) : 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            r[i] = (base.nodes[i] - t.alphas[k]) * V[k][i];
            if (k > 0) r[i] -= sb * V[k - 1][i];
        }
        // full reorthogonalization, two passes
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j <= k; ++j) {
                double d = 0.0;
                for (std::size_t i = 0; i < m; ++i) d += r[i] * V[j][i];
                for (std::size_t i = 0; i < m; ++i) r[i] -= d * V[j][i];
            }
        }
        double nr = 0.0;
        for (std::size_t i = 0; i < m; ++i) nr += r[i] * r[i];
        if (!(nr > 0.0) || !std::isfinite(nr))
            throw NumericError("Stieltjes breakdown: beta_" + std::to_string(k + 1) + " <= 0");
        t.betas[k + 1] = nr;
        const double s = 1.0 / std::sqrt(nr);
        for (std::size_t i = 0; i < m; ++i) V[k + 1][i] = r[i] * s;
        t.alphas[k + 1] = rayleigh(V[k + 1]);
    }
    return t;
}

namespace {

// pi_n and pi_n' (monic) at x
std::pair<double, double> monic_eval(const RecurrenceTable& t, int n, double x) {
    double p0 = 1.0, p1 = x - t.alphas[0], d0 = 0.0, d1 = 1.0;
    if (n == 0) return {1.0, 0.0};
    for (int k = 1; k < n; ++k) {
        double p2 = (x - t.alphas[k]) * p1 - t.betas[k] * p0;
        double d2 = p1 + (x - t.alphas[k]) * d1 - t.betas[k] * d0;
        p0 = p1; p1 = p2; d0 = d1; d1 = d2;
    }
    return {p1, d1};
}

}  // namespace

GaussRule gauss_from_recurrence(const RecurrenceTable& table, int n, bool polish) {
    if (n < 1) throw ParameterError("gauss_from_recurrence needs n >= 1");
    if (table.size() < static_cast<std::size_t>(n)) throw ParameterError("recurrence table too short");
    Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = table.alphas[k];
    for (int k = 1; k < n; ++k) {
        if (!(table.betas[k] > 0.0)) throw NumericError("non-positive recurrence coefficient");
        sub[k - 1] = std::sqrt(table.betas[k]);
    }
    GaussRule g;
    g.nodes.resize(n);
    g.weights.resize(n);
    if (n == 1) {
        g.nodes[0] = diag[0];
        g.weights[0] = table.mass();
        return g;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw NumericError("tridiagonal eigensolver did not converge");
    for (int k = 0; k < n; ++k) {
        g.nodes[k] = es.eigenvalues()[k];
        const double v = es.eigenvectors()(0, k);
        g.weights[k] = table.mass() * v * v;
    }
    if (polish) {
        for (int k = 0; k < n; ++k) {
            double x = g.nodes[k];
            for (int it = 0; it < 3; ++it) {
                auto [p, d] = monic_eval(table, n, x);
                if (d == 0.0) break;
                x -= p / d;
            }
            g.nodes[k] = x;
            g.weights[k] = christoffel(table, n, x);
        }
    }
    return g;
}

std::vector<double> orthonormal_eval(const RecurrenceTable& table, int n, double x) {
    std::vector<double> p(n);
    if (n == 0) return p;
    if (table.size() < static_cast<std::size_t>(n)) throw ParameterError("recurrence table too short");
    p[0] = 1.0 / std::sqrt(table.mass());
    if (n > 1) p[1] = (x - table.alphas[0]) * p[0] / std::sqrt(table.betas[1]);
    for (int k = 1; k + 1 < n; ++k)
        p[k + 1] = ((x - table.alphas[k]) * p[k] - std::sqrt(table.betas[k]) * p[k - 1]) /
                   std::sqrt(table.betas[k + 1]);
    return p;
}

double christoffel(const RecurrenceTable& table, int n, double x) {
    if (n < 1) throw ParameterError("christoffel needs n >= 1");
    auto p = orthonormal_eval(table, n, x);
    double s = 0.0;
    for (double v : p) s += v * v;
    return 1.0 / s;
}

double log_leading_coefficient(const RecurrenceTable& table, int n) {
    if (table.size() < static_cast<std::size_t>(n + 1)) throw ParameterError("recurrence table too short");
    double s = std::log(table.mass());
    for (int k = 1; k <= n; ++k) s += std::log(table.betas[k]);
    return -0.5 * s;
}

}  // namespace sgq
