#pragma once

#include <Eigen/Dense>

namespace macc::metrics {

/// Acknowledged payload over a window, in Mbps.
inline double throughput_mbps(double delivered_bytes, double window_s) {
    return delivered_bytes * 8.0 / window_s / 1e6;
}

/// Mean absolute deviation: sum |x_i - mean| / n. Empty input throws.
double mad(const Eigen::Ref<const Eigen::VectorXd>& series);

}  // namespace macc::metrics
