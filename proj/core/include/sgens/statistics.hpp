#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sgens {

/// A Monte Carlo estimate with its standard error.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

/// Integrated autocorrelation time of a single chain, tau = 1 + 2 sum rho(t),
/// with Sokal's self-consistent window (stop at the first t >= c tau).
double integrated_autocorrelation_time(std::span<const double> series, double window_c = 6.0);

/// Mean over equal-length chains with a batch-means standard error. Each
/// chain is cut into `batches_per_chain` contiguous batches; the error is the
/// spread of all batch means.
Estimate batch_mean(std::span<const std::span<const double>> chains,
                    std::size_t batches_per_chain = 20);

/// Variance about the pooled mean, error from batch means of the squared
/// deviations.
Estimate batch_variance(std::span<const std::span<const double>> chains,
                        std::size_t batches_per_chain = 20);

/// Total-variation distance between two discrete distributions given as
/// (possibly unnormalized) nonnegative weights on the same bins.
double total_variation(std::span<const double> p, std::span<const double> q);

}  // namespace sgens
