#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace sgens {

using RealWave = std::vector<double>;
using ComplexWave = std::vector<std::complex<double>>;

struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  std::size_t n_points = 4001;
};

void validate(const GridSpec& spec);

/// Uniform 1D grid. Quadrature uses trapezoid weights (half weight at the
/// two endpoints).
class Grid {
public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  std::span<const double> points() const noexcept { return x_; }
  double operator[](std::size_t i) const noexcept { return x_[i]; }
  std::size_t size() const noexcept { return x_.size(); }
  double spacing() const noexcept { return dx_; }
  double weight(std::size_t i) const noexcept {
    return (i == 0 || i + 1 == x_.size()) ? 0.5 * dx_ : dx_;
  }
  /// True when x_min == -x_max, so that x[i] == -x[n-1-i].
  bool symmetric() const noexcept;

  bool same_as(const Grid& other) const noexcept;

private:
  GridSpec spec_;
  std::vector<double> x_;
  double dx_;
};

Grid make_grid(const GridSpec& spec);

// ---------------------------------------------------------------------------
// Potentials

/// V(x) = m w^2 x^2 / 2
struct Harmonic {
  double omega = 1.0;
};

/// V(x) = W0 (x^2 - x0^2)^2
struct QuarticDoubleWell {
  double w0 = 1.0;
  double x0 = 1.5;
};

/// V(x) = sum_k c_k x^k
struct Polynomial {
  std::vector<double> coefficients;
};

using BasePotential = std::variant<Harmonic, QuarticDoubleWell, Polynomial>;

/// base(x) + lambda x. Only one level of nesting is representable.
struct Tilted {
  BasePotential base;
  double lambda = 0.0;
};

using PotentialSpec = std::variant<Harmonic, QuarticDoubleWell, Polynomial, Tilted>;

void validate(const PotentialSpec& potential);

/// Even under x -> -x by construction (no odd terms, no tilt).
bool is_reflection_symmetric(const PotentialSpec& potential);

/// Pointwise V(x). The harmonic variant needs the particle mass.
double eval_potential(const PotentialSpec& potential, double x, double mass = 1.0);
std::vector<double> eval_potential(const PotentialSpec& potential, std::span<const double> x,
                                   double mass = 1.0);

/// Second derivative of V at its (global) minimum; used to seed multiplier
/// brackets. Returns 1 for polynomials whose minimum has zero curvature.
double curvature_estimate(const PotentialSpec& potential, double mass);

struct ModelParams {
  double mass = 1.0;
  double hbar = 1.0;
  PotentialSpec potential = QuarticDoubleWell{};
};

void validate(const ModelParams& model);

// ---------------------------------------------------------------------------
// Hamiltonian

/// Central-difference image of p^2/2m + V with Dirichlet walls just outside
/// the first and last grid points.
struct TridiagonalOperator {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;
  Grid grid;

  std::size_t size() const noexcept { return diagonal.size(); }
  /// Infinity norm of the matrix.
  double norm() const noexcept;
  /// y = T x
  void apply(std::span<const double> x, std::span<double> y) const;
};

TridiagonalOperator assemble_hamiltonian(const ModelParams& model, const Grid& grid);

/// Returns op + lambda * x (diagonal shift only).
TridiagonalOperator add_linear_tilt(const TridiagonalOperator& op, double lambda);

// ---------------------------------------------------------------------------
// Quadrature on the grid

double inner(const Grid& grid, std::span<const double> a, std::span<const double> b);
std::complex<double> inner(const Grid& grid, std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b);
double norm_squared(const Grid& grid, std::span<const double> a);
double norm_squared(const Grid& grid, std::span<const std::complex<double>> a);

/// Scales `a` in place to unit grid norm.
void normalize(const Grid& grid, std::span<double> a);

/// (phi_a, x phi_b) with trapezoid weights.
double position_element(std::span<const double> phi_a, std::span<const double> phi_b,
                        const Grid& grid);

/// (phi_a, d/dx phi_b) with the central difference derivative. Real and
/// antisymmetric in (a, b).
double derivative_element(std::span<const double> phi_a, std::span<const double> phi_b,
                          const Grid& grid);

/// <psi, -i hbar d/dx psi> for a normalized state.
double momentum_expectation(std::span<const std::complex<double>> psi, const Grid& grid,
                            double hbar = 1.0);

/// <psi, x psi>
double position_expectation(std::span<const std::complex<double>> psi, const Grid& grid);

/// <psi, T psi> for a complex state (real for Hermitian T).
double energy_expectation(const TridiagonalOperator& op,
                          std::span<const std::complex<double>> psi);

}  // namespace sgens
