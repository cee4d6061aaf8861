#pragma once

#include <Eigen/Core>
#include <vector>

#include "ccstat/rng.hpp"

namespace ccstat {

// Stationary unit-variance AR(1) errors on a (possibly gapped) integer time
// axis: across a gap of d years the step correlation is rho^d, so the draw
// is exact for the gapped covariance rho^{|u-t|}.
Eigen::VectorXd simulate_ar1_errors(const std::vector<int>& times, double rho,
                                    Rng& rng);

// Convenience for a contiguous axis 1..n.
Eigen::VectorXd simulate_ar1_errors(int n, double rho, Rng& rng);

}  // namespace ccstat
