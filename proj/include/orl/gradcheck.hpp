#pragma once

#include "orl/mlp.hpp"
#include "orl/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace orl {

/// Compares analytic gradients against central finite differences on a
/// random subset of at least `min_probes` parameters (all of them when the
/// net is smaller). Returns the worst relative error seen.
///
/// Relative error uses a floor of 1e-3 in the denominator so parameters
/// whose true gradient is zero do not amplify finite-difference noise.
inline double grad_check(const ParamSet& params, const ParamSet& analytic,
                         const std::function<double(const ParamSet&)>& loss,
                         double eps = 1e-5, int min_probes = 100, uint64_t seed = 0) {
    ORL_REQUIRE(params.same_shape(analytic), "grad_check: gradient shape mismatch");
    size_t n = params.n_params();
    std::vector<size_t> idx;
    if (n <= static_cast<size_t>(min_probes)) {
        idx.resize(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
    } else {
        Rng rng(seed);
        idx.reserve(min_probes);
        for (int i = 0; i < min_probes; ++i)
            idx.push_back(static_cast<size_t>(rng.uniform_int(static_cast<int>(n))));
        std::sort(idx.begin(), idx.end());
        idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    }
    ParamSet probe = params;
    double worst = 0.0;
    for (size_t i : idx) {
        double orig = probe.at(i);
        probe.at(i) = orig + eps;
        double up = loss(probe);
        probe.at(i) = orig - eps;
        double down = loss(probe);
        probe.at(i) = orig;
        ORL_REQUIRE(std::isfinite(up) && std::isfinite(down), "grad_check: non-finite loss");
        double numeric = (up - down) / (2.0 * eps);
        double a = analytic.at(i);
        double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-3});
        worst = std::max(worst, rel);
    }
    return worst;
}

}  // namespace orl
