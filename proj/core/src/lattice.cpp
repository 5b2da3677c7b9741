#include "sgens/lattice.hpp"

#include "sgens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace sgens {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double eval_base(const BasePotential& base, double x, double mass) {
  return std::visit(
      overloaded{
          [&](const Harmonic& h) { return 0.5 * mass * h.omega * h.omega * x * x; },
          [&](const QuarticDoubleWell& q) {
            const double s = x * x - q.x0 * q.x0;
            return q.w0 * s * s;
          },
          [&](const Polynomial& p) {
            double v = 0.0;
            for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it) {
              v = v * x + *it;
            }
            return v;
          },
      },
      base);
}

void validate_base(const BasePotential& base) {
  std::visit(overloaded{
                 [](const Harmonic& h) {
                   if (!(h.omega > 0.0) || !std::isfinite(h.omega)) {
                     throw ConfigError("harmonic potential requires omega > 0");
                   }
                 },
                 [](const QuarticDoubleWell& q) {
                   if (!(q.w0 > 0.0) || !(q.x0 > 0.0) || !std::isfinite(q.w0) ||
                       !std::isfinite(q.x0)) {
                     throw ConfigError("quartic double well requires w0 > 0 and x0 > 0");
                   }
                 },
                 [](const Polynomial& p) {
                   if (p.coefficients.empty()) {
                     throw ConfigError("polynomial potential needs at least one coefficient");
                   }
                   for (double c : p.coefficients) {
                     if (!std::isfinite(c)) throw ConfigError("non-finite polynomial coefficient");
                   }
                 },
             },
             base);
}

bool base_symmetric(const BasePotential& base) {
  if (const auto* p = std::get_if<Polynomial>(&base)) {
    for (std::size_t k = 1; k < p->coefficients.size(); k += 2) {
      if (p->coefficients[k] != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

// ---------------------------------------------------------------------------

void validate(const GridSpec& spec) {
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max) || !(spec.x_min < spec.x_max)) {
    std::ostringstream os;
    os << "grid requires x_min < x_max (got " << spec.x_min << ", " << spec.x_max << ")";
    throw ConfigError(os.str());
  }
  if (spec.n_points < 3) {
    throw ConfigError("grid requires n_points >= 3");
  }
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  validate(spec);
  const std::size_t n = spec.n_points;
  dx_ = (spec.x_max - spec.x_min) / static_cast<double>(n - 1);
  x_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    x_[i] = spec.x_min + static_cast<double>(i) * dx_;
  }
  x_.front() = spec.x_min;
  x_.back() = spec.x_max;
  if (spec.x_min == -spec.x_max) {
    // mirror exactly so that even functions evaluate identically at +-x
    for (std::size_t i = 0; i < n / 2; ++i) x_[n - 1 - i] = -x_[i];
    if (n % 2 == 1) x_[n / 2] = 0.0;
  }
}

bool Grid::symmetric() const noexcept { return spec_.x_min == -spec_.x_max; }

bool Grid::same_as(const Grid& other) const noexcept {
  return spec_.x_min == other.spec_.x_min && spec_.x_max == other.spec_.x_max &&
         spec_.n_points == other.spec_.n_points;
}

Grid make_grid(const GridSpec& spec) { return Grid(spec); }

// ---------------------------------------------------------------------------

void validate(const PotentialSpec& potential) {
  std::visit(overloaded{
                 [](const Tilted& t) {
                   validate_base(t.base);
                   if (!std::isfinite(t.lambda)) throw ConfigError("non-finite tilt");
                 },
                 [](const auto& base) { validate_base(BasePotential{base}); },
             },
             potential);
}

bool is_reflection_symmetric(const PotentialSpec& potential) {
  return std::visit(overloaded{
                        [](const Tilted& t) { return t.lambda == 0.0 && base_symmetric(t.base); },
                        [](const auto& base) { return base_symmetric(BasePotential{base}); },
                    },
                    potential);
}

double eval_potential(const PotentialSpec& potential, double x, double mass) {
  return std::visit(overloaded{
                        [&](const Tilted& t) { return eval_base(t.base, x, mass) + t.lambda * x; },
                        [&](const auto& base) { return eval_base(BasePotential{base}, x, mass); },
                    },
                    potential);
}

std::vector<double> eval_potential(const PotentialSpec& potential, std::span<const double> x,
                                   double mass) {
  std::vector<double> v(x.size());
  std::transform(x.begin(), x.end(), v.begin(),
                 [&](double xi) { return eval_potential(potential, xi, mass); });
  return v;
}

double curvature_estimate(const PotentialSpec& potential, double mass) {
  const auto from_base = [mass](const BasePotential& base) -> double {
    return std::visit(overloaded{
                          [&](const Harmonic& h) { return mass * h.omega * h.omega; },
                          [](const QuarticDoubleWell& q) { return 8.0 * q.w0 * q.x0 * q.x0; },
                          [](const Polynomial& p) {
                            // scan for the minimum on a generous window
                            const BasePotential b{p};
                            double best_x = 0.0;
                            double best_v = eval_base(b, 0.0, 1.0);
                            for (int i = -2000; i <= 2000; ++i) {
                              const double x = 0.005 * i;
                              const double v = eval_base(b, x, 1.0);
                              if (v < best_v) {
                                best_v = v;
                                best_x = x;
                              }
                            }
                            const double h = 1e-3;
                            const double c = (eval_base(b, best_x + h, 1.0) - 2.0 * best_v +
                                              eval_base(b, best_x - h, 1.0)) /
                                             (h * h);
                            return c > 1e-6 ? c : 1.0;
                          },
                      },
                      base);
  };
  return std::visit(overloaded{
                        [&](const Tilted& t) { return from_base(t.base); },
                        [&](const auto& base) { return from_base(BasePotential{base}); },
                    },
                    potential);
}

void validate(const ModelParams& model) {
  if (!(model.mass > 0.0) || !std::isfinite(model.mass)) throw ConfigError("mass must be > 0");
  if (!(model.hbar > 0.0) || !std::isfinite(model.hbar)) throw ConfigError("hbar must be > 0");
  validate(model.potential);
}

// ---------------------------------------------------------------------------

double TridiagonalOperator::norm() const noexcept {
  double best = 0.0;
  const std::size_t n = diagonal.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) row += std::abs(off_diagonal[i]);
    best = std::max(best, row);
  }
  return best;
}

void TridiagonalOperator::apply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = diagonal.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = diagonal[i] * x[i];
    if (i > 0) acc += off_diagonal[i - 1] * x[i - 1];
    if (i + 1 < n) acc += off_diagonal[i] * x[i + 1];
    y[i] = acc;
  }
}

TridiagonalOperator assemble_hamiltonian(const ModelParams& model, const Grid& grid) {
  validate(model);
  const double dx = grid.spacing();
  const double kinetic = model.hbar * model.hbar / (model.mass * dx * dx);
  const auto v = eval_potential(model.potential, grid.points(), model.mass);

  TridiagonalOperator op{std::vector<double>(grid.size()),
                         std::vector<double>(grid.size() - 1, -0.5 * kinetic), grid};
  for (std::size_t i = 0; i < grid.size(); ++i) op.diagonal[i] = kinetic + v[i];
  return op;
}

TridiagonalOperator add_linear_tilt(const TridiagonalOperator& op, double lambda) {
  TridiagonalOperator out = op;
  for (std::size_t i = 0; i < out.size(); ++i) out.diagonal[i] += lambda * op.grid[i];
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void require_on_grid(std::size_t n, const Grid& grid, const char* what) {
  if (n != grid.size()) {
    throw UsageError(std::string(what) + ": wavefunction length " + std::to_string(n) +
                     " does not match grid size " + std::to_string(grid.size()));
  }
}

}  // namespace

double inner(const Grid& grid, std::span<const double> a, std::span<const double> b) {
  require_on_grid(a.size(), grid, "inner");
  require_on_grid(b.size(), grid, "inner");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += grid.weight(i) * a[i] * b[i];
  return s;
}

std::complex<double> inner(const Grid& grid, std::span<const std::complex<double>> a,
                           std::span<const std::complex<double>> b) {
  require_on_grid(a.size(), grid, "inner");
  require_on_grid(b.size(), grid, "inner");
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += grid.weight(i) * std::conj(a[i]) * b[i];
  return s;
}

double norm_squared(const Grid& grid, std::span<const double> a) { return inner(grid, a, a); }

double norm_squared(const Grid& grid, std::span<const std::complex<double>> a) {
  return inner(grid, a, a).real();
}

void normalize(const Grid& grid, std::span<double> a) {
  const double n2 = norm_squared(grid, a);
  if (!(n2 > 0.0)) throw UsageError("cannot normalize a zero wavefunction");
  const double s = 1.0 / std::sqrt(n2);
  for (double& v : a) v *= s;
}

double position_element(std::span<const double> phi_a, std::span<const double> phi_b,
                        const Grid& grid) {
  require_on_grid(phi_a.size(), grid, "position_element");
  require_on_grid(phi_b.size(), grid, "position_element");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    s += grid.weight(i) * phi_a[i] * grid[i] * phi_b[i];
  }
  return s;
}

double derivative_element(std::span<const double> phi_a, std::span<const double> phi_b,
                          const Grid& grid) {
  require_on_grid(phi_a.size(), grid, "derivative_element");
  require_on_grid(phi_b.size(), grid, "derivative_element");
  const std::size_t n = grid.size();
  // sum_i a_i (b_{i+1} - b_{i-1}) / 2, Dirichlet zeros outside; interior
  // weights so the discrete operator stays exactly antisymmetric
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double right = i + 1 < n ? phi_b[i + 1] : 0.0;
    const double left = i > 0 ? phi_b[i - 1] : 0.0;
    s += phi_a[i] * (right - left);
  }
  return 0.5 * s;
}

double momentum_expectation(std::span<const std::complex<double>> psi, const Grid& grid,
                            double hbar) {
  require_on_grid(psi.size(), grid, "momentum_expectation");
  const double n2 = norm_squared(grid, psi);
  if (std::abs(n2 - 1.0) > 1e-8) {
    throw UsageError("momentum_expectation: state is not normalized (norm^2 = " +
                     std::to_string(n2) + ")");
  }
  const std::size_t n = grid.size();
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> right = i + 1 < n ? psi[i + 1] : 0.0;
    const std::complex<double> left = i > 0 ? psi[i - 1] : 0.0;
    s += std::conj(psi[i]) * (right - left);
  }
  // <psi, -i hbar D psi>, D = central difference / (2 dx), measure dx
  const std::complex<double> value = std::complex<double>(0.0, -hbar) * 0.5 * s;
  if (std::abs(value.imag()) > 1e-10 * std::max(1.0, std::abs(value.real()))) {
    throw UsageError("momentum_expectation: non-Hermitian residue " +
                     std::to_string(value.imag()));
  }
  return value.real();
}

double position_expectation(std::span<const std::complex<double>> psi, const Grid& grid) {
  require_on_grid(psi.size(), grid, "position_expectation");
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) s += grid.weight(i) * std::norm(psi[i]) * grid[i];
  return s;
}

double energy_expectation(const TridiagonalOperator& op,
                          std::span<const std::complex<double>> psi) {
  require_on_grid(psi.size(), op.grid, "energy_expectation");
  const std::size_t n = op.size();
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> h = op.diagonal[i] * psi[i];
    if (i > 0) h += op.off_diagonal[i - 1] * psi[i - 1];
    if (i + 1 < n) h += op.off_diagonal[i] * psi[i + 1];
    s += op.grid.weight(i) * std::conj(psi[i]) * h;
  }
  return s.real();
}

}  // namespace sgens
