#pragma once

#include <complex>
#include <vector>

#include "qwalk/spectral.hpp"
#include "qwalk/time_average.hpp"

namespace qwalk {

/// Position law of the continuous-time walk at time t, started at vertex 0.
struct CTQWDist {
  std::vector<double> probs;
  double t = 0.0;
};

enum class GlobalPhase { kInclude, kDrop };

/// <k| exp(i t L) |0> for every k, via the spectral sum
/// e^{it} sum_l e^{-i t lambda_l} v_l(k) v_l(0).
/// kDrop omits the e^{it} factor, which never changes probabilities.
std::vector<std::complex<double>> ctqw_amplitudes(const SpectralData& spec, double t,
                                                  GlobalPhase phase = GlobalPhase::kInclude);

CTQWDist ctqw_distribution(const SpectralData& spec, double t);

/// Exact (1/T) integral_0^T P(X_t = j) dt from the eigenpairs; no quadrature.
/// Cross terms enter through sin(T d) / (T d) with d = lambda_l - lambda_m.
TimeAveragedDist ctqw_time_average_finite(const SpectralData& spec, double T);

/// Limit T -> infinity: pbar_C(j) = sum_l v_l(j)^2 v_l(0)^2.
TimeAveragedDist ctqw_time_average(const SpectralData& spec);

}  // namespace qwalk
