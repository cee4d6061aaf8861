#include "ccstat/simulate.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccstat {

Eigen::VectorXd simulate_ar1_errors(const std::vector<int>& times, double rho,
                                    Rng& rng) {
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("simulate_ar1: |rho| must be < 1");
  const auto n = static_cast<Eigen::Index>(times.size());
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd e(n);
  if (n == 0) return e;
  e(0) = gauss(rng);
  for (Eigen::Index k = 1; k < n; ++k) {
    const int gap = times[static_cast<std::size_t>(k)] -
                    times[static_cast<std::size_t>(k - 1)];
    if (gap <= 0) throw std::invalid_argument("simulate_ar1: bad time axis");
    const double r = (gap == 1) ? rho : std::pow(rho, static_cast<double>(gap));
    e(k) = r * e(k - 1) + std::sqrt(1.0 - r * r) * gauss(rng);
  }
  return e;
}

Eigen::VectorXd simulate_ar1_errors(int n, double rho, Rng& rng) {
  std::vector<int> times(static_cast<std::size_t>(n));
  std::iota(times.begin(), times.end(), 1);
  return simulate_ar1_errors(times, rho, rng);
}

}  // namespace ccstat
