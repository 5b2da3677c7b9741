#include "sgens/statistics.hpp"

#include "sgens/errors.hpp"

#include <cmath>
#include <numeric>

namespace sgens {

double integrated_autocorrelation_time(std::span<const double> series, double window_c) {
  const std::size_t n = series.size();
  if (n < 4) return 1.0;
  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);
  double c0 = 0.0;
  for (double x : series) c0 += (x - mean) * (x - mean);
  c0 /= static_cast<double>(n);
  if (!(c0 > 0.0)) return 1.0;

  double tau = 1.0;
  for (std::size_t t = 1; t < n / 2; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += (series[i] - mean) * (series[i + t] - mean);
    ct /= static_cast<double>(n);
    tau += 2.0 * ct / c0;
    if (static_cast<double>(t) >= window_c * tau) break;
  }
  return std::max(tau, 1.0);
}

namespace {

std::vector<double> batch_means_of(std::span<const std::span<const double>> chains,
                                   std::size_t batches, auto&& transform) {
  std::vector<double> means;
  for (const auto& chain : chains) {
    const std::size_t len = chain.size() / batches;
    if (len == 0) throw UsageError("batch means: chain shorter than the number of batches");
    for (std::size_t b = 0; b < batches; ++b) {
      double s = 0.0;
      for (std::size_t i = b * len; i < (b + 1) * len; ++i) s += transform(chain[i]);
      means.push_back(s / static_cast<double>(len));
    }
  }
  return means;
}

Estimate summarize(const std::vector<double>& means) {
  const double k = static_cast<double>(means.size());
  const double m = std::accumulate(means.begin(), means.end(), 0.0) / k;
  double v = 0.0;
  for (double x : means) v += (x - m) * (x - m);
  v /= (k - 1.0);
  return {m, std::sqrt(v / k)};
}

}  // namespace

Estimate batch_mean(std::span<const std::span<const double>> chains, std::size_t batches_per_chain) {
  if (chains.empty() || batches_per_chain < 2) {
    throw UsageError("batch_mean needs at least one chain and two batches");
  }
  return summarize(batch_means_of(chains, batches_per_chain, [](double x) { return x; }));
}

Estimate batch_variance(std::span<const std::span<const double>> chains,
                        std::size_t batches_per_chain) {
  const Estimate mu = batch_mean(chains, batches_per_chain);
  const double m = mu.value;
  return summarize(
      batch_means_of(chains, batches_per_chain, [m](double x) { return (x - m) * (x - m); }));
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw UsageError("total_variation: bin count mismatch");
  const double sp = std::accumulate(p.begin(), p.end(), 0.0);
  const double sq = std::accumulate(q.begin(), q.end(), 0.0);
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] / sp - q[i] / sq);
  return 0.5 * tv;
}

}  // namespace sgens
