#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace dskg {

/// Quadrature weights for m uniform intervals of width dt (m+1 nodes).
/// Composite Simpson when m is even; Simpson on the first m-3 intervals plus
/// the 3/8 rule on the last three when m is odd (keeps O(dt^4) accuracy and
/// leaves the left-anchored Simpson pattern untouched, so integrals over
/// nested upper limits share their interior weights). m == 1 falls back to
/// the trapezoid.
inline std::vector<double> quad_weights(std::size_t m, double dt) {
    std::vector<double> w(m + 1, 0.0);
    if (m == 0) return w;
    if (m == 1) {
        w[0] = w[1] = 0.5 * dt;
        return w;
    }
    std::size_t simpson_end = m;  // intervals covered by plain Simpson
    if (m % 2 != 0) simpson_end = m - 3;
    if (simpson_end > 0) {
        w[0] += dt / 3.0;
        w[simpson_end] += dt / 3.0;
        for (std::size_t j = 1; j < simpson_end; ++j)
            w[j] += (j % 2 == 1 ? 4.0 : 2.0) * dt / 3.0;
    }
    if (m % 2 != 0) {
        w[m - 3] += 3.0 * dt / 8.0;
        w[m - 2] += 9.0 * dt / 8.0;
        w[m - 1] += 9.0 * dt / 8.0;
        w[m] += 3.0 * dt / 8.0;
    }
    return w;
}

/// Integral of sampled values over m = values.size()-1 uniform intervals.
inline double integrate_samples(const std::vector<double>& values, double dt) {
    if (values.empty()) throw std::invalid_argument("integrate_samples: empty input");
    const std::vector<double> w = quad_weights(values.size() - 1, dt);
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += w[i] * values[i];
    return acc;
}

}  // namespace dskg
