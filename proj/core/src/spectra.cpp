#include "sgens/spectra.hpp"

#include "sgens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sgens {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// LU factorization with partial pivoting of (T - shift I), LAPACK dgttrf
/// layout: dl (n-1), d (n), du (n-1), du2 (n-2), ipiv.
struct TridiagonalLU {
  std::vector<double> dl, d, du, du2;
  std::vector<char> swapped;

  TridiagonalLU(const TridiagonalOperator& op, double shift) {
    const std::size_t n = op.size();
    d.resize(n);
    dl.assign(op.off_diagonal.begin(), op.off_diagonal.end());
    du.assign(op.off_diagonal.begin(), op.off_diagonal.end());
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = op.diagonal[i] - shift;

    // exact zero pivots are replaced by a tiny value; the solve then
    // amplifies the wanted eigendirection, which is the point
    const double tiny = kEps * std::max(op.norm(), 1.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double f = dl[i] / d[i];
        dl[i] = f;
        d[i + 1] -= f * du[i];
      } else {
        const double f = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = f;
        const double tmp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = tmp - f * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -f * du[i + 1];
        }
        swapped[i] = 1;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::span<double> b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (swapped[i]) {
        const double tmp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = tmp - dl[i] * b[i];
      } else {
        b[i + 1] -= dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t ii = n - 2; ii-- > 0;) {
      b[ii] = (b[ii] - du[ii] * b[ii + 1] - du2[ii] * b[ii + 2]) / d[ii];
    }
  }
};

double grid_norm(const Grid& g, std::span<const double> v) { return std::sqrt(norm_squared(g, v)); }

double residual_of(const TridiagonalOperator& op, std::span<const double> v, double e,
                   std::vector<double>& scratch) {
  op.apply(v, scratch);
  for (std::size_t i = 0; i < v.size(); ++i) scratch[i] -= e * v[i];
  return grid_norm(op.grid, scratch) / grid_norm(op.grid, v);
}

void fix_sign(std::span<double> v) {
  for (double x : v) {
    if (std::abs(x) > 1e-8) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

void orthogonalize(const Grid& g, std::span<double> v, std::span<const EigenPair> against) {
  for (const auto& p : against) {
    const double c = inner(g, p.wavefunction, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * p.wavefunction[i];
  }
}

}  // namespace

namespace {

std::size_t sturm_count_guarded(const TridiagonalOperator& op, double x, double guard) {
  const std::size_t n = op.size();
  std::size_t count = 0;
  double q = op.diagonal[0] - x;
  for (std::size_t i = 0;; ++i) {
    if (q == 0.0) q = -guard;
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    const double b = op.off_diagonal[i];
    q = op.diagonal[i + 1] - x - b * b / q;
  }
  return count;
}

}  // namespace

std::size_t sturm_count(const TridiagonalOperator& op, double x) {
  return sturm_count_guarded(op, x, kEps * std::max(op.norm(), 1.0));
}

std::pair<double, double> spectrum_bounds(const TridiagonalOperator& op) {
  const std::size_t n = op.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(op.off_diagonal[i - 1]);
    if (i + 1 < n) r += std::abs(op.off_diagonal[i]);
    lo = std::min(lo, op.diagonal[i] - r);
    hi = std::max(hi, op.diagonal[i] + r);
  }
  return {lo, hi};
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, std::size_t k, double tol,
                                       std::optional<std::pair<double, double>> ground_bracket) {
  if (k == 0 || k > op.size()) {
    throw UsageError("lowest_eigenvalues: need 1 <= k <= n");
  }
  if (!(tol > 0.0)) throw UsageError("lowest_eigenvalues: tol must be positive");

  auto [glo, ghi] = spectrum_bounds(op);
  const double pad = kEps * std::max({std::abs(glo), std::abs(ghi), 1.0}) * 4.0;
  glo -= pad;
  ghi += pad;
  const double guard = kEps * std::max(op.norm(), 1.0);

  // upper[j]: smallest known x with sturm_count(x) > j
  std::vector<double> upper(k, ghi);
  std::vector<double> values(k);
  double lo = glo;
  if (ground_bracket && ground_bracket->first < ground_bracket->second &&
      sturm_count_guarded(op, ground_bracket->first, guard) == 0 &&
      sturm_count_guarded(op, ground_bracket->second, guard) >= 1) {
    lo = ground_bracket->first;
    upper[0] = ground_bracket->second;
  }
  for (std::size_t j = 0; j < k; ++j) {
    double a = lo;
    double b = upper[j];
    for (int it = 0; it < 400; ++it) {
      const double width_floor = 2.0 * kEps * std::max(std::abs(a), std::abs(b));
      if (b - a <= std::max(tol, width_floor)) break;
      const double mid = 0.5 * (a + b);
      const std::size_t c = sturm_count_guarded(op, mid, guard);
      if (c > j) {
        b = mid;
        for (std::size_t l = j + 1; l < std::min(c, k); ++l) upper[l] = std::min(upper[l], mid);
      } else {
        a = mid;
      }
    }
    values[j] = 0.5 * (a + b);
    lo = a;
  }
  return values;
}

double residual_bound(const TridiagonalOperator& op, const EigenOptions& options) {
  return std::max(options.tol, 64.0 * kEps * op.norm());
}

namespace {

/// T commutes with the reflection i -> n-1-i.
bool mirror_symmetric(const TridiagonalOperator& op) {
  const std::size_t n = op.size();
  auto close = [](double a, double b) { return std::abs(a - b) <= 4.0 * kEps * std::max(std::abs(a), std::abs(b)); };
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (!close(op.diagonal[i], op.diagonal[n - 1 - i])) return false;
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!close(op.off_diagonal[i], op.off_diagonal[n - 2 - i])) return false;
  }
  return true;
}

/// Keeps the dominant parity component of v.
void project_parity(std::span<double> v) {
  const std::size_t n = v.size();
  double even = 0.0, odd = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    even += (v[i] + v[n - 1 - i]) * (v[i] + v[n - 1 - i]);
    odd += (v[i] - v[n - 1 - i]) * (v[i] - v[n - 1 - i]);
  }
  const double sign = even >= odd ? 1.0 : -1.0;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (v[i] + sign * v[n - 1 - i]);
    v[i] = a;
    v[n - 1 - i] = sign * a;
  }
  if (n % 2 == 1 && sign < 0.0) v[n / 2] = 0.0;
}

}  // namespace

std::vector<EigenPair> lowest_eigenpairs(const TridiagonalOperator& op, std::size_t k,
                                         const EigenOptions& options) {
  const auto energies = lowest_eigenvalues(op, k, options.tol, options.ground_bracket);
  const std::size_t n = op.size();
  const Grid& g = op.grid;
  const double target = residual_bound(op, options);
  const double cluster_gap = 1e3 * kEps;
  // eigenvectors of a reflection-invariant operator have definite parity;
  // enforcing it removes residue that would otherwise leak into <q>
  const bool mirror = mirror_symmetric(op);

  std::vector<EigenPair> pairs;
  pairs.reserve(k);
  std::vector<double> scratch(n);
  std::size_t cluster_start = 0;

  for (std::size_t j = 0; j < k; ++j) {
    const double e = energies[j];
    if (j > 0 && std::abs(e - energies[j - 1]) >= cluster_gap * std::max(std::abs(e), 1.0)) {
      cluster_start = j;
    }
    const std::span<const EigenPair> cluster(pairs.data() + cluster_start, j - cluster_start);

    // perturb repeated shifts so cluster members see distinct factorizations
    const double shift = e + static_cast<double>(j - cluster_start) * 10.0 * kEps *
                                 std::max(std::abs(e), 1.0);
    const TridiagonalLU lu(op, shift);

    // deterministic, non-symmetric start vector
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = 1.0 + 0.5 * std::sin(0.7 * static_cast<double>(i) + static_cast<double>(j));
    }
    orthogonalize(g, v, cluster);
    normalize(g, v);

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_v = v;
    for (int it = 0; it < options.max_iterations; ++it) {
      lu.solve(v);
      orthogonalize(g, v, cluster);
      normalize(g, v);
      const double r = residual_of(op, v, e, scratch);
      if (r < best) {
        best = r;
        best_v = v;
      }
      // at least two sweeps so that tails are polished past the first hit
      if (r <= target && it >= 1) break;
    }
    if (mirror) {
      // only once converged: early iterates can still be dominated by the
      // wrong parity
      std::vector<double> projected = best_v;
      project_parity(projected);
      orthogonalize(g, projected, cluster);
      normalize(g, projected);
      const double r = residual_of(op, projected, e, scratch);
      if (r <= std::max(best, target)) {
        best = r;
        best_v = std::move(projected);
      }
    }
    const bool converged = best <= target;
    if (!converged) {
      std::ostringstream os;
      os << "inverse iteration for eigenvalue " << j << " (E = " << e
         << ") did not reach residual " << target << "; best " << best;
      throw SolverError(os.str(), best);
    }
    fix_sign(best_v);
    pairs.push_back(EigenPair{e, std::move(best_v), best});
  }
  return pairs;
}

const char* to_string(Parity p) {
  switch (p) {
    case Parity::even:
      return "even";
    case Parity::odd:
      return "odd";
    case Parity::none:
      return "none";
  }
  return "none";
}

Parity parity_of(std::span<const double> phi, const Grid& grid) {
  if (!grid.symmetric()) throw UsageError("parity_of requires a symmetric grid");
  if (phi.size() != grid.size()) throw UsageError("parity_of: wavefunction/grid size mismatch");
  const std::size_t n = phi.size();
  double even_dev = 0.0;
  double odd_dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    even_dev = std::max(even_dev, std::abs(phi[i] - phi[n - 1 - i]));
    odd_dev = std::max(odd_dev, std::abs(phi[i] + phi[n - 1 - i]));
  }
  if (even_dev < 1e-6) return Parity::even;
  if (odd_dev < 1e-6) return Parity::odd;
  return Parity::none;
}

Parity parity_of(const EigenPair& pair, const Grid& grid) {
  return parity_of(pair.wavefunction, grid);
}

}  // namespace sgens
