#include "macc/metrics/stats.hpp"

#include <stdexcept>

namespace macc::metrics {

double mad(const Eigen::Ref<const Eigen::VectorXd>& series) {
    if (series.size() == 0) {
        throw std::invalid_argument("mad: empty series");
    }
    const double mean = series.mean();
    return (series.array() - mean).abs().mean();
}

}  // namespace macc::metrics
