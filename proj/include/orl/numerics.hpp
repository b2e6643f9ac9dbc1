#pragma once

#include "orl/common.hpp"

#include <cmath>

namespace orl {

/// max(v) + ln sum exp(v_i - max(v)). Stable for large-magnitude inputs.
inline double logsumexp(const Vec& values) {
    ORL_REQUIRE(values.size() > 0, "logsumexp: empty vector");
    double m = values.maxCoeff();
    if (!std::isfinite(m)) return m;  // all -inf, or contains +inf/nan
    double s = (values.array() - m).exp().sum();
    return m + std::log(s);
}

/// Row-wise logsumexp of a matrix.
inline Vec logsumexp_rows(const Mat& x) {
    Vec m = x.rowwise().maxCoeff();
    Vec s = (x.colwise() - m).array().exp().rowwise().sum();
    return m + s.array().log().matrix();
}

/// Stable softmax over a vector.
inline Vec softmax(const Vec& logits) {
    Vec e = (logits.array() - logits.maxCoeff()).exp();
    return e / e.sum();
}

/// Row-wise stable softmax.
inline Mat softmax_rows(const Mat& logits) {
    Mat e = (logits.colwise() - logits.rowwise().maxCoeff()).array().exp();
    return e.array().colwise() / e.rowwise().sum().array();
}

/// Row-wise log-softmax.
inline Mat log_softmax_rows(const Mat& logits) {
    return logits.colwise() - logsumexp_rows(logits);
}

inline double softplus(double x) {
    return x > 30.0 ? x : std::log1p(std::exp(x));
}

/// ln(1 - tanh(z)^2) without catastrophic cancellation at large |z|.
inline double log_one_minus_tanh_sq(double z) {
    return 2.0 * (std::log(2.0) - z - softplus(-2.0 * z));
}

inline bool all_finite(const Mat& m) { return m.allFinite(); }

}  // namespace orl
