#include "sgens/thermal.hpp"

#include "sgens/errors.hpp"
#include "sgens/spectra.hpp"
#include "sgens/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sgens {

namespace {

double trapezoid(std::span<const double> x, std::span<const double> f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  return s;
}

}  // namespace

MarginalDensity sg_marginal_q(const EffectivePotentialTable& table, double beta) {
  if (table.size() < 2) throw UsageError("sg_marginal_q: table needs at least two nodes");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError("sg_marginal_q: beta must be > 0");

  MarginalDensity md;
  md.beta = beta;
  md.q = table.q;
  md.v_eff = table.v_eff;
  md.v_min = *std::min_element(md.v_eff.begin(), md.v_eff.end());
  md.density.resize(md.q.size());
  for (std::size_t i = 0; i < md.q.size(); ++i) {
    md.density[i] = std::exp(-beta * (md.v_eff[i] - md.v_min));
  }
  md.normalization = trapezoid(md.q, md.density);
  for (double& f : md.density) f /= md.normalization;
  return md;
}

double MarginalDensity::operator()(double x) const {
  if (q.empty() || x < q.front() || x > q.back()) return 0.0;
  auto it = std::upper_bound(q.begin(), q.end(), x);
  if (it == q.end()) return density.back();
  const std::size_t i = static_cast<std::size_t>(it - q.begin());
  const double t = (x - q[i - 1]) / (q[i] - q[i - 1]);
  const double v = (1.0 - t) * v_eff[i - 1] + t * v_eff[i];
  return std::exp(-beta * (v - v_min)) / normalization;
}

double MarginalDensity::mass(double a, double b) const {
  a = std::max(a, q.front());
  b = std::min(b, q.back());
  if (!(b > a)) return 0.0;
  std::vector<double> xs{a};
  for (double x : q) {
    if (x > a && x < b) xs.push_back(x);
  }
  xs.push_back(b);
  // refine each interval so that the linear-V interpolation is integrated
  // beyond trapezoid accuracy at steep parts of the density
  std::vector<double> fine;
  std::vector<double> f;
  constexpr int kSub = 8;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (int s = 0; s < kSub; ++s) {
      const double x = xs[i] + (xs[i + 1] - xs[i]) * s / kSub;
      fine.push_back(x);
      f.push_back((*this)(x));
    }
  }
  fine.push_back(b);
  f.push_back((*this)(b));
  return trapezoid(fine, f);
}

QMoments q_moments(const MarginalDensity& density) {
  const std::size_t n = density.q.size();
  std::vector<double> f1(n);
  for (std::size_t i = 0; i < n; ++i) f1[i] = density.q[i] * density.density[i];
  const double m1 = trapezoid(density.q, f1);
  // central moment directly; q^2 - m1^2 cancels badly for off-center tables
  std::vector<double> c2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dq = density.q[i] - m1;
    c2[i] = dq * dq * density.density[i];
  }
  return {m1, std::max(0.0, trapezoid(density.q, c2))};
}

HistogramComparison compare_histogram(std::span<const double> samples, const MarginalDensity& marginal,
                                      std::size_t bins) {
  if (samples.empty() || bins < 1) throw UsageError("compare_histogram: need samples and at least one bin");
  auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
  const double lo = std::max(*mn, marginal.q.front());
  const double hi = std::min(*mx, marginal.q.back());
  if (!(hi > lo)) throw UsageError("compare_histogram: samples do not overlap the table");

  HistogramComparison h;
  h.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins);
  h.edges.back() = hi;
  h.empirical.assign(bins, 0.0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    const double t = std::floor((x - lo) / width);
    const auto b = static_cast<std::size_t>(std::clamp(t, 0.0, static_cast<double>(bins - 1)));
    h.empirical[b] += 1.0;
  }
  for (double& c : h.empirical) c /= static_cast<double>(samples.size());
  h.expected.resize(bins);
  double total = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    h.expected[b] = marginal.mass(h.edges[b], h.edges[b + 1]);
    total += h.expected[b];
  }
  for (double& e : h.expected) e /= total;
  h.total_variation = total_variation(h.empirical, h.expected);
  return h;
}

ThermalCurve fluctuation_curve(const EffectivePotentialTable& table,
                               std::span<const double> betas) {
  if (table.size() < 2) throw UsageError("fluctuation_curve: empty table");
  const double split = table.meta.e2 - table.meta.e1;
  ThermalCurve curve;
  for (double beta : betas) {
    const auto md = sg_marginal_q(table, beta);
    if (!table.bounded_support) {
      const double peak = *std::max_element(md.density.begin(), md.density.end());
      const double edge = std::max(md.density.front(), md.density.back());
      if (edge > 1e-8 * peak) {
        std::ostringstream os;
        os << "table q-range [" << table.q.front() << ", " << table.q.back()
           << "] does not cover the thermal weight at beta = " << beta
           << " (edge/peak = " << edge / peak << ")";
        throw CoverageError(os.str(), beta);
      }
    }
    const auto m = q_moments(md);
    const double dq = std::sqrt(m.variance);
    curve.beta.push_back(beta);
    curve.rescaled_temperature.push_back(split > 0.0 ? 2.0 / (beta * split) : 0.0);
    curve.mean_q.push_back(m.mean);
    curve.delta_q.push_back(dq);
    curve.delta_q_over_d.push_back(table.meta.d > 0.0 ? dq / table.meta.d : 0.0);
    curve.delta_p.push_back(std::sqrt(table.meta.model.mass / beta));
  }
  return curve;
}

std::vector<double> betas_for_rescaled_temperatures(double e1, double e2, double t_min,
                                                    double t_max, std::size_t count) {
  if (!(e2 > e1)) throw UsageError("rescaled temperatures need E2 > E1");
  if (!(t_min > 0.0) || !(t_max >= t_min) || count == 0) {
    throw UsageError("rescaled temperature range must satisfy 0 < t_min <= t_max, count >= 1");
  }
  std::vector<double> betas(count);
  const double lmin = std::log(t_min);
  const double lmax = std::log(t_max);
  for (std::size_t i = 0; i < count; ++i) {
    const double t =
        count == 1 ? t_min
                   : std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                         static_cast<double>(count - 1));
    betas[i] = 2.0 / (t * (e2 - e1));
  }
  return betas;
}

double sg_joint_density(const MarginalDensity& marginal, double mass, double q, double p) {
  const double beta = marginal.beta;
  const double gauss = std::sqrt(beta / (2.0 * std::numbers::pi * mass)) *
                       std::exp(-beta * p * p / (2.0 * mass));
  return marginal(q) * gauss;
}

// ---------------------------------------------------------------------------

namespace {

/// Outermost point (scanning from x_ref in `direction`) past which the bare
/// potential stays above `level`: the first x with V(x) >= level that is
/// also on a rising flank.
double reach(const PotentialSpec& v, double mass, double x_ref, double level, double direction,
             double step) {
  double x = x_ref;
  for (int i = 0; i < 1000000; ++i) {
    const double here = eval_potential(v, x, mass);
    const double next = eval_potential(v, x + direction * step, mass);
    if (here >= level && next > here) return x;
    x += direction * step;
  }
  throw CoverageError("potential does not confine: V never reaches the required level", 0.0);
}

}  // namespace

EffectivePotentialTable covering_table(const ModelParams& model, const GridSpec& base,
                                       double beta_min, const CoverageOptions& options) {
  if (!(beta_min > 0.0)) throw UsageError("covering_table: beta_min must be > 0");
  const Grid base_grid(base);
  const TiltedFamily base_family(model, base_grid);
  const TableMeta meta = spectrum_meta(base_family, options.root);
  const double h = meta.d * options.spacing_over_d;
  const double x_ref = base_family.ground_state(0.0, options.root.eigen).mean_position;
  const double needed = (std::log(1.0 / options.tail_ratio) + 2.0) / beta_min;

  double right = std::max(meta.d, reach(model.potential, model.mass, x_ref, meta.e1 + needed, 1.0, h));
  double left = std::min(-meta.d, reach(model.potential, model.mass, x_ref, meta.e1 + needed, -1.0, h));
  if (base_family.symmetric()) {
    right = std::max(right, -left);
    left = -right;
  }

  for (int attempt = 0; attempt <= options.max_extensions; ++attempt) {
    const auto i_hi = static_cast<long>(std::ceil(right / h));
    const auto i_lo = static_cast<long>(std::floor(left / h));
    std::vector<double> q_nodes;
    for (long i = i_lo; i <= i_hi; ++i) q_nodes.push_back(static_cast<double>(i) * h);

    const double half_width = std::max({std::abs(base.x_min), std::abs(base.x_max),
                                        std::abs(q_nodes.front()) + options.wall_margin,
                                        std::abs(q_nodes.back()) + options.wall_margin});
    GridSpec spec = base;
    if (half_width > std::max(std::abs(base.x_min), std::abs(base.x_max))) {
      const double dx = base_grid.spacing();
      const auto cells = static_cast<std::size_t>(std::ceil(2.0 * half_width / dx));
      spec = GridSpec{-0.5 * static_cast<double>(cells) * dx, 0.5 * static_cast<double>(cells) * dx,
                      cells + 1};
    }
    const Grid grid(spec);
    auto table = effective_potential(TiltedFamily(model, grid), q_nodes, options.root,
                                     options.threads);
    table.meta = meta;  // doublet data of the reference grid
    table.meta.grid = spec;

    if (table.size() >= 2) {
      const auto md = sg_marginal_q(table, beta_min);
      const double peak = *std::max_element(md.density.begin(), md.density.end());
      if (md.density.front() <= options.tail_ratio * peak &&
          md.density.back() <= options.tail_ratio * peak && table.failures.empty()) {
        return table;
      }
    }
    const double grow = 0.25 * (right - left);
    right += grow;
    left -= grow;
  }
  std::ostringstream os;
  os << "could not build a table covering beta = " << beta_min << " after "
     << options.max_extensions << " extensions";
  throw CoverageError(os.str(), beta_min);
}

EffectivePotentialTable restrict_table(const EffectivePotentialTable& table, double lo, double hi) {
  EffectivePotentialTable out;
  out.meta = table.meta;
  out.bounded_support = true;
  const double slack = 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)});
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.q[i] >= lo - slack && table.q[i] <= hi + slack) {
      out.q.push_back(table.q[i]);
      out.v_eff.push_back(table.v_eff[i]);
      out.lambda.push_back(table.lambda[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

double CanonicalAtoms::mean_q() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * a.q;
  return s;
}

double CanonicalAtoms::delta_q() const {
  const double m = mean_q();
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight * (a.q - m) * (a.q - m);
  return std::sqrt(s);
}

CanonicalAtoms canonical_atoms(const ModelParams& model, const Grid& grid, double beta,
                               std::size_t k_max, const EigenOptions& options) {
  if (k_max < 1) throw UsageError("canonical_atoms: k_max must be >= 1");
  if (!(beta > 0.0)) throw UsageError("canonical_atoms: beta must be > 0");
  const auto pairs = lowest_eigenpairs(assemble_hamiltonian(model, grid), k_max, options);

  CanonicalAtoms out;
  out.beta = beta;
  const double e1 = pairs.front().energy;
  out.truncation_weight = std::exp(-beta * (pairs.back().energy - e1));
  if (!(out.truncation_weight < 1e-10)) {
    std::ostringstream os;
    os << "canonical sum truncated at k_max = " << k_max << " with exp(-beta (E_kmax - E_1)) = "
       << out.truncation_weight << " >= 1e-10; increase k_max";
    throw TruncationError(os.str());
  }
  double z_rel = 0.0;
  for (const auto& p : pairs) z_rel += std::exp(-beta * (p.energy - e1));
  out.log_z = std::log(z_rel) - beta * e1;
  for (const auto& p : pairs) {
    out.atoms.push_back({p.energy, std::exp(-beta * (p.energy - e1)) / z_rel,
                         position_element(p.wavefunction, p.wavefunction, grid)});
  }
  return out;
}

}  // namespace sgens
