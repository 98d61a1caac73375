#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qwalk/bdchain.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/time_average.hpp"

namespace qwalk {

enum class Coin : std::size_t { kLeft = 0, kRight = 1 };

/// Arc-indexed amplitudes, layout 2*j + coin (L = 0, R = 1).
using CoinState = std::vector<std::complex<double>>;

constexpr std::size_t arc_index(std::size_t vertex, Coin coin) {
  return 2 * vertex + static_cast<std::size_t>(coin);
}

/// |0> (x) |R>, the fixed initial state of the discrete walk.
CoinState initial_state(std::size_t n);

/// Szegedy walk U = S C on P_{n+1}, applied matrix-free.
///
/// C is the identity at the walls and the reflection 2|phi_j><phi_j| - I on
/// the interior, with phi_j = (sqrt(pL_j), sqrt(pR_j)). S is the flip-flop
/// shift (j, L) <-> (j-1, R). The arcs (0, L) and (n, R) have no partner on
/// the path and are left fixed by S; the walk started at (0, R) never
/// reaches them.
class SzegedyOperator {
 public:
  explicit SzegedyOperator(const BDChain& chain);

  std::size_t n() const { return n_; }
  std::size_t state_size() const { return 2 * (n_ + 1); }

  void apply_coin(std::span<std::complex<double>> state) const;
  void apply_shift(std::span<std::complex<double>> state) const;
  /// state <- S C state
  void apply(std::span<std::complex<double>> state) const;

 private:
  void check_size(std::size_t size) const;

  std::size_t n_;
  std::vector<double> sqrt_left_;
  std::vector<double> sqrt_right_;
};

CoinState apply_U(const SzegedyOperator& op, const CoinState& state);

/// Lift of a vertex vector onto arcs: (0,R) = v(0), (j,L|R) = v(j) phi_j,
/// (n,L) = v(n). Norm preserving for unit v.
CoinState lift_vector(const BDChain& chain, std::span<const double> v);

/// Position law after t steps from |0>|R>.
std::vector<double> dtqw_distribution(const SzegedyOperator& op, std::size_t t);

/// Calls visit(t, probs) for t = 0..T-1.
void dtqw_trace(const SzegedyOperator& op, std::size_t T,
                const std::function<void(std::size_t, std::span<const double>)>& visit);

/// Cesaro mean of dtqw_distribution over t = 0..T-1.
TimeAveragedDist dtqw_time_average_empirical(const SzegedyOperator& op, std::size_t T);

/// Closed-form pbar_D from the Jacobi eigenpairs of the same chain.
/// Throws std::domain_error if an interior 1 - lambda_l^2 is not bounded away from 0.
TimeAveragedDist dtqw_time_average(const BDChain& chain, const SpectralData& spec);

struct LiftedEigenpair {
  std::complex<double> mu;
  CoinState u;
  std::size_t level = 0;  // index l of the Jacobi eigenvalue it comes from
  int branch = 0;         // 0 for mu = +-1, otherwise +1 / -1 for mu_{+-l}
  double weight = 1.0;    // projector weight 1 / <u, u>
};

/// 2n eigenpairs of U: (1, lift v_0), (-1, lift v_n), then mu_{+l}, mu_{-l}
/// with u = lift v_l - mu S lift v_l for l = 1..n-1.
std::vector<LiftedEigenpair> lifted_eigenpairs(const BDChain& chain, const SpectralData& spec);

/// sum_pairs weight * mu^t |u><u|0,R>: U^t applied to the initial state
/// through the eigenpair expansion.
CoinState spectral_evolve(std::span<const LiftedEigenpair> pairs, std::size_t n, std::size_t t);

/// F_D(k) - F_C(k) in closed form, for 0 <= k <= n-1.
double dtqw_cdf_correction(const BDChain& chain, const SpectralData& spec, std::size_t k);

}  // namespace qwalk
