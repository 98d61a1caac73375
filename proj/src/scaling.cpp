#include "qwalk/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qwalk/ctqw.hpp"
#include "qwalk/szegedy.hpp"

namespace qwalk {

double StepCDF::operator()(double x) const {
  if (x < 0.0) return 0.0;
  const double k = std::floor(x);
  if (k >= static_cast<double>(n())) return values.back();
  return values[static_cast<std::size_t>(k)];
}

StepCDF step_cdf(const TimeAveragedDist& pbar) {
  if (pbar.probs.empty()) throw std::invalid_argument("empty distribution");
  StepCDF cdf;
  cdf.kind = (pbar.kind == AverageKind::kDtqwClosed || pbar.kind == AverageKind::kDtqwEmpirical)
                 ? WalkKind::kDtqw
                 : WalkKind::kCtqw;
  cdf.values.resize(pbar.probs.size());
  double running = 0.0;
  for (std::size_t k = 0; k < pbar.probs.size(); ++k) {
    running += pbar.probs[k];
    cdf.values[k] = running;
  }
  return cdf;
}

double ks_distance(const StepCDF& a, const StepCDF& b) {
  if (a.values.size() != b.values.size()) {
    throw std::invalid_argument("ks_distance: CDFs live on lattices of different size");
  }
  double d = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    d = std::max(d, std::abs(a.values[k] - b.values[k]));
  }
  return d;
}

double arcsine_cdf(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

double interior_overlap_sum(const SpectralData& spec, std::size_t k) {
  const std::size_t n = spec.n();
  double s = 0.0;
  for (std::size_t l = 1; l < n; ++l) {
    const double a = spec.component(l, k) * spec.component(l, 0);
    s += a * a;
  }
  return s;
}

namespace {

ScalingRow run_size(const ChainSpec& family, std::size_t n, const ScalingOptions& opts) {
  ScalingRow row;
  row.n = n;
  try {
    if (n < 2) throw InvalidChain("scaling sweep needs n >= 2");
    const BDChain chain = build_chain(family, n);
    const SpectralData spec = eigendecompose(jacobi_matrix(chain));
    const StepCDF cdf_c = step_cdf(ctqw_time_average(spec));
    const StepCDF cdf_d = step_cdf(dtqw_time_average(chain, spec));
    row.gap = spectral_gap(spec);
    row.ks_cd = ks_distance(cdf_c, cdf_d);
    if (opts.reference) {
      double d = 0.0;
      for (std::size_t k = 0; k <= n; ++k) {
        const double x = static_cast<double>(k) / static_cast<double>(n);
        d = std::max(d, std::abs(cdf_c.values[k] - (*opts.reference)(x)));
      }
      row.ks_ref = d;
    }
    row.ok = true;
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

}  // namespace

ScalingReport theorem1_experiment(const ChainSpec& family, std::vector<std::size_t> sizes,
                                  const ScalingOptions& opts) {
  std::sort(sizes.begin(), sizes.end());
  ScalingReport report;
  report.family = to_string(family.family);
  report.reference_name = opts.reference ? opts.reference_name : std::string();
  report.rows.resize(sizes.size());

  std::size_t workers = opts.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(sizes.size(), 1));

  // Static round-robin assignment; each worker fills only its own rows.
  std::vector<std::future<void>> pending;
  for (std::size_t w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < sizes.size(); i += workers) {
        report.rows[i] = run_size(family, sizes[i], opts);
      }
    }));
  }
  for (auto& f : pending) f.get();
  return report;
}

}  // namespace qwalk
