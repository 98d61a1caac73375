#include "qwalk/ctqw.hpp"

#include <cmath>
#include <stdexcept>

namespace qwalk {

namespace {

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

std::vector<std::complex<double>> ctqw_amplitudes(const SpectralData& spec, double t,
                                                  GlobalPhase phase) {
  const std::size_t m = spec.dim();
  std::vector<std::complex<double>> amps(m, {0.0, 0.0});
  for (std::size_t l = 0; l < m; ++l) {
    const std::complex<double> rotation = std::polar(1.0, -t * spec.eigenvalue(l));
    const std::complex<double> weight = rotation * spec.component(l, 0);
    const auto v = spec.eigenvector(l);
    for (std::size_t k = 0; k < m; ++k) amps[k] += weight * v[k];
  }
  if (phase == GlobalPhase::kInclude) {
    const std::complex<double> global = std::polar(1.0, t);
    for (auto& a : amps) a *= global;
  }
  return amps;
}

CTQWDist ctqw_distribution(const SpectralData& spec, double t) {
  const auto amps = ctqw_amplitudes(spec, t, GlobalPhase::kDrop);
  CTQWDist out;
  out.t = t;
  out.probs.resize(amps.size());
  for (std::size_t k = 0; k < amps.size(); ++k) out.probs[k] = std::norm(amps[k]);
  return out;
}

TimeAveragedDist ctqw_time_average_finite(const SpectralData& spec, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("CTQW averaging horizon must be positive");
  const std::size_t m = spec.dim();

  // Symmetric kernel K(l, m) = sinc(T (lambda_l - lambda_m)), K(l, l) = 1.
  std::vector<double> kernel(m * m, 1.0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const double s = sinc(T * (spec.eigenvalue(a) - spec.eigenvalue(b)));
      kernel[a * m + b] = s;
      kernel[b * m + a] = s;
    }
  }

  TimeAveragedDist out;
  out.kind = AverageKind::kCtqwFiniteT;
  out.horizon = T;
  out.probs.resize(m);
  std::vector<double> coeff(m);
  std::vector<double> terms(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) coeff[l] = spec.component(l, j) * spec.component(l, 0);
    for (std::size_t a = 0; a < m; ++a) {
      double row = 0.0;
      const double* krow = kernel.data() + a * m;
      for (std::size_t b = 0; b < m; ++b) row += krow[b] * coeff[b];
      terms[a] = coeff[a] * row;
    }
    out.probs[j] = accurate_sum(terms);
  }
  return out;
}

TimeAveragedDist ctqw_time_average(const SpectralData& spec) {
  const std::size_t m = spec.dim();
  TimeAveragedDist out;
  out.kind = AverageKind::kCtqwClosed;
  out.probs.resize(m);
  std::vector<double> terms(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t l = 0; l < m; ++l) {
      const double a = spec.component(l, j) * spec.component(l, 0);
      terms[l] = a * a;
    }
    out.probs[j] = accurate_sum(terms);
  }
  return out;
}

}  // namespace qwalk
