#pragma once

#include "sgens/lattice.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sgens {

/// Normalized eigenpair on the operator's grid. The first component with
/// magnitude above 1e-8 is positive.
struct EigenPair {
  double energy = 0.0;
  RealWave wavefunction;
  double residual = 0.0;  ///< ||H phi - E phi|| / ||phi||
};

struct EigenOptions {
  double tol = 1e-10;            ///< absolute eigenvalue tolerance
  int max_iterations = 500;      ///< inverse-iteration cap per vector
  /// Optional enclosure [lo, hi] of the lowest eigenvalue. It is checked with
  /// Sturm counts and ignored when it does not hold.
  std::optional<std::pair<double, double>> ground_bracket;
};

/// Number of eigenvalues of `op` strictly below `x` (Sturm sequence count).
std::size_t sturm_count(const TridiagonalOperator& op, double x);

/// Gershgorin enclosure [lo, hi] of the spectrum.
std::pair<double, double> spectrum_bounds(const TridiagonalOperator& op);

/// Lowest `k` eigenvalues by bisection, ascending.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k,
                                       double tol = 1e-10,
                                       std::optional<std::pair<double, double>> ground_bracket = {});

/// Lowest `k` eigenpairs, ascending. Eigenvalues are bracketed by Sturm
/// bisection, vectors come from inverse iteration with Gram-Schmidt inside
/// clusters of nearly equal eigenvalues.
std::vector<EigenPair> lowest_eigenpairs(const TridiagonalOperator& op, std::size_t k,
                                         const EigenOptions& options = {});

/// Residual bound the solver guarantees: max(tol, 64 eps ||T||).
double residual_bound(const TridiagonalOperator& op, const EigenOptions& options);

enum class Parity { even, odd, none };

const char* to_string(Parity p);

/// Classifies a state on a symmetric grid by max_i |phi(x_i) -+ phi(-x_i)| < 1e-6.
Parity parity_of(const EigenPair& pair, const Grid& grid);
Parity parity_of(std::span<const double> phi, const Grid& grid);

}  // namespace sgens
