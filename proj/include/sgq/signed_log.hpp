#pragma once

#include <cmath>
#include <limits>
#include <vector>

namespace sgq {

// A real number kept as sign and log|value| so that weights of size e^{+-700}
// and beyond stay usable.
struct SignedLog {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();
    double value = 0.0;

    SignedLog() = default;
    SignedLog(int s, double la) : sign(s == 0 ? 0 : (s > 0 ? 1 : -1)), log_abs(s == 0 ? -std::numeric_limits<double>::infinity() : la) {
        value = sign == 0 ? 0.0 : sign * std::exp(log_abs);
    }
    static SignedLog from_value(double v) {
        if (v == 0.0) return SignedLog();
        return SignedLog(v > 0 ? 1 : -1, std::log(std::fabs(v)));
    }
};

// Accumulates signed terms given in log form. Positive and negative parts are
// summed separately against a common scale with Neumaier compensation.
class LogSum {
public:
    void add(int sign, double log_abs) {
        if (sign == 0) return;
        terms_.push_back({sign, log_abs});
    }
    SignedLog result() const;
    // (|pos| + |neg|) / |pos - neg|; infinite when the sum cancels to zero
    double condition() const;

private:
    struct Term { int sign; double log_abs; };
    void parts(double& scale, double& pos, double& neg) const;
    std::vector<Term> terms_;
};

// Neumaier-compensated running sum.
class KahanSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) c_ += (sum_ - t) + x;
        else c_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + c_; }

private:
    double sum_ = 0.0, c_ = 0.0;
};

}  // namespace sgq
