#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qwalk/bdchain.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/time_average.hpp"

namespace qwalk {

enum class WalkKind { kCtqw, kDtqw };

/// Step distribution function on the lattice 0..n: values[k] = sum_{j<=k} pbar(j).
struct StepCDF {
  std::vector<double> values;
  WalkKind kind = WalkKind::kCtqw;

  std::size_t n() const { return values.size() - 1; }
  /// F(x) = values[floor(x)], 0 below the lattice and 1 above it.
  double operator()(double x) const;
};

StepCDF step_cdf(const TimeAveragedDist& pbar);

/// max_k |a[k] - b[k]|; exact sup distance for step functions on the same lattice.
double ks_distance(const StepCDF& a, const StepCDF& b);

/// (2/pi) asin(sqrt(x)), with x clamped to [0, 1].
double arcsine_cdf(double x);

/// sum_{l=1}^{n-1} v_l(k)^2 v_l(0)^2, the interior overlap whose decay drives
/// the CTQW -> DTQW transfer.
double interior_overlap_sum(const SpectralData& spec, std::size_t k);

using ReferenceCdf = std::function<double(double)>;

struct ScalingOptions {
  std::optional<ReferenceCdf> reference;
  std::string reference_name;  // e.g. "arcsine"; empty when no reference
  std::size_t workers = 0;     // 0 = hardware concurrency
};

struct ScalingRow {
  std::size_t n = 0;
  bool ok = false;
  std::string error;  // set iff !ok
  double gap = 0.0;
  double ks_cd = 0.0;
  std::optional<double> ks_ref;
};

struct ScalingReport {
  std::string family;
  std::string reference_name;
  std::vector<ScalingRow> rows;  // ascending n
};

/// Per size: chain, eigenpairs, closed-form pbar_C / pbar_D, their CDFs,
/// gap, sup distance between the two, and optionally the distance from
/// F_C(floor(n x)) to the reference at x = k/n. A failing size is recorded
/// in its row and does not abort the sweep.
ScalingReport theorem1_experiment(const ChainSpec& family, std::vector<std::size_t> sizes,
                                  const ScalingOptions& opts = {});

}  // namespace qwalk
