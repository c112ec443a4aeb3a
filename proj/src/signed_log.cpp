#include "sgq/signed_log.hpp"

#include <algorithm>

namespace sgq {

void LogSum::parts(double& scale, double& pos, double& neg) const {
    scale = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) scale = std::max(scale, t.log_abs);
    KahanSum p, q;
    for (const auto& t : terms_) {
        const double v = std::exp(t.log_abs - scale);
        if (t.sign > 0) p.add(v); else q.add(v);
    }
    pos = p.value();
    neg = q.value();
}

SignedLog LogSum::result() const {
    if (terms_.empty()) return SignedLog();
    double scale, pos, neg;
    parts(scale, pos, neg);
    const double d = pos - neg;
    if (d == 0.0) return SignedLog();
    return SignedLog(d > 0 ? 1 : -1, scale + std::log(std::fabs(d)));
}

double LogSum::condition() const {
    if (terms_.empty()) return 1.0;
    double scale, pos, neg;
    parts(scale, pos, neg);
    const double d = std::fabs(pos - neg);
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    return (pos + neg) / d;
}

}  // namespace sgq
