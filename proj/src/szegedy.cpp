#include "qwalk/szegedy.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qwalk {

namespace {

constexpr double kInteriorFloor = 1e-13;

void check_pair(const BDChain& chain, const SpectralData& spec) {
  if (chain.vertices() != spec.dim()) {
    throw std::invalid_argument("spectral data does not belong to a chain of this size");
  }
}

double interior_denominator(const SpectralData& spec, std::size_t l) {
  const double lambda = spec.eigenvalue(l);
  const double denom = 1.0 - lambda * lambda;
  if (!(denom > kInteriorFloor)) {
    std::ostringstream msg;
    msg << "interior eigenvalue lambda_" << l << " = " << lambda << " is too close to +-1";
    throw std::domain_error(msg.str());
  }
  return denom;
}

}  // namespace

CoinState initial_state(std::size_t n) {
  CoinState state(2 * (n + 1), {0.0, 0.0});
  state[arc_index(0, Coin::kRight)] = 1.0;
  return state;
}

SzegedyOperator::SzegedyOperator(const BDChain& chain)
    : n_(chain.n()), sqrt_left_(chain.vertices()), sqrt_right_(chain.vertices()) {
  for (std::size_t j = 0; j <= n_; ++j) {
    sqrt_left_[j] = std::sqrt(chain.left(j));
    sqrt_right_[j] = std::sqrt(chain.right(j));
  }
}

void SzegedyOperator::check_size(std::size_t size) const {
  if (size != state_size()) {
    std::ostringstream msg;
    msg << "coin state has " << size << " components, expected " << state_size();
    throw std::invalid_argument(msg.str());
  }
}

void SzegedyOperator::apply_coin(std::span<std::complex<double>> state) const {
  check_size(state.size());
  for (std::size_t j = 1; j < n_; ++j) {
    auto& left = state[arc_index(j, Coin::kLeft)];
    auto& right = state[arc_index(j, Coin::kRight)];
    const std::complex<double> overlap = sqrt_left_[j] * left + sqrt_right_[j] * right;
    left = 2.0 * sqrt_left_[j] * overlap - left;
    right = 2.0 * sqrt_right_[j] * overlap - right;
  }
}

void SzegedyOperator::apply_shift(std::span<std::complex<double>> state) const {
  check_size(state.size());
  for (std::size_t j = 1; j <= n_; ++j) {
    std::swap(state[arc_index(j, Coin::kLeft)], state[arc_index(j - 1, Coin::kRight)]);
  }
}

void SzegedyOperator::apply(std::span<std::complex<double>> state) const {
  apply_coin(state);
  apply_shift(state);
}

CoinState apply_U(const SzegedyOperator& op, const CoinState& state) {
  CoinState out = state;
  op.apply(out);
  return out;
}

CoinState lift_vector(const BDChain& chain, std::span<const double> v) {
  const std::size_t n = chain.n();
  if (v.size() != chain.vertices()) {
    std::ostringstream msg;
    msg << "vertex vector has length " << v.size() << ", expected " << chain.vertices();
    throw std::invalid_argument(msg.str());
  }
  CoinState lifted(2 * (n + 1), {0.0, 0.0});
  lifted[arc_index(0, Coin::kRight)] = v[0];
  for (std::size_t j = 1; j < n; ++j) {
    lifted[arc_index(j, Coin::kLeft)] = v[j] * std::sqrt(chain.left(j));
    lifted[arc_index(j, Coin::kRight)] = v[j] * std::sqrt(chain.right(j));
  }
  lifted[arc_index(n, Coin::kLeft)] = v[n];
  return lifted;
}

namespace {

void vertex_probs(const CoinState& state, std::vector<double>& probs) {
  for (std::size_t j = 0; j < probs.size(); ++j) {
    probs[j] = std::norm(state[arc_index(j, Coin::kLeft)]) +
               std::norm(state[arc_index(j, Coin::kRight)]);
  }
}

}  // namespace

std::vector<double> dtqw_distribution(const SzegedyOperator& op, std::size_t t) {
  CoinState state = initial_state(op.n());
  for (std::size_t step = 0; step < t; ++step) op.apply(state);
  std::vector<double> probs(op.n() + 1);
  vertex_probs(state, probs);
  return probs;
}

void dtqw_trace(const SzegedyOperator& op, std::size_t T,
                const std::function<void(std::size_t, std::span<const double>)>& visit) {
  CoinState state = initial_state(op.n());
  std::vector<double> probs(op.n() + 1);
  for (std::size_t t = 0; t < T; ++t) {
    vertex_probs(state, probs);
    visit(t, probs);
    op.apply(state);
  }
}

TimeAveragedDist dtqw_time_average_empirical(const SzegedyOperator& op, std::size_t T) {
  if (T == 0) throw std::invalid_argument("DTQW averaging horizon must be at least 1");
  std::vector<double> sum(op.n() + 1, 0.0);
  dtqw_trace(op, T, [&](std::size_t, std::span<const double> probs) {
    for (std::size_t j = 0; j < sum.size(); ++j) sum[j] += probs[j];
  });
  TimeAveragedDist out;
  out.kind = AverageKind::kDtqwEmpirical;
  out.horizon = static_cast<double>(T);
  out.probs.resize(sum.size());
  for (std::size_t j = 0; j < sum.size(); ++j) out.probs[j] = sum[j] / static_cast<double>(T);
  return out;
}

TimeAveragedDist dtqw_time_average(const BDChain& chain, const SpectralData& spec) {
  check_pair(chain, spec);
  const std::size_t n = chain.n();
  auto sq = [&](std::size_t l, std::size_t j) {
    const double x = spec.component(l, j);
    return x * x;
  };

  std::vector<double> inv_denom(n + 1, 0.0);
  for (std::size_t l = 1; l < n; ++l) inv_denom[l] = 1.0 / interior_denominator(spec, l);

  TimeAveragedDist out;
  out.kind = AverageKind::kDtqwClosed;
  out.probs.resize(n + 1);
  std::vector<double> terms;
  terms.reserve(2 * n + 3);
  for (std::size_t j = 0; j <= n; ++j) {
    terms.clear();
    terms.push_back(0.5 * sq(0, j) * sq(0, 0));
    terms.push_back(0.5 * sq(n, j) * sq(n, 0));
    for (std::size_t l = 0; l <= n; ++l) terms.push_back(0.5 * sq(l, j) * sq(l, 0));
    for (std::size_t l = 1; l < n; ++l) {
      const double lambda = spec.eigenvalue(l);
      const double from_left = j > 0 ? chain.right(j - 1) * sq(l, j - 1) : 0.0;
      const double from_right = j < n ? chain.left(j + 1) * sq(l, j + 1) : 0.0;
      const double bracket = from_left - lambda * lambda * sq(l, j) + from_right;
      terms.push_back(0.5 * inv_denom[l] * bracket * sq(l, 0));
    }
    out.probs[j] = accurate_sum(terms);
  }
  return out;
}

std::vector<LiftedEigenpair> lifted_eigenpairs(const BDChain& chain, const SpectralData& spec) {
  check_pair(chain, spec);
  const std::size_t n = chain.n();
  const SzegedyOperator op(chain);

  std::vector<LiftedEigenpair> pairs;
  pairs.reserve(2 * n);
  pairs.push_back({{1.0, 0.0}, lift_vector(chain, spec.eigenvector(0)), 0, 0, 1.0});
  pairs.push_back({{-1.0, 0.0}, lift_vector(chain, spec.eigenvector(n)), n, 0, 1.0});

  for (std::size_t l = 1; l < n; ++l) {
    const double weight = 1.0 / (2.0 * interior_denominator(spec, l));
    const CoinState lifted = lift_vector(chain, spec.eigenvector(l));
    CoinState shifted = lifted;
    op.apply_shift(shifted);
    const double angle = std::acos(spec.eigenvalue(l));
    for (int branch : {+1, -1}) {
      const std::complex<double> mu = std::polar(1.0, branch * angle);
      CoinState u(lifted.size());
      for (std::size_t i = 0; i < u.size(); ++i) u[i] = lifted[i] - mu * shifted[i];
      pairs.push_back({mu, std::move(u), l, branch, weight});
    }
  }
  return pairs;
}

CoinState spectral_evolve(std::span<const LiftedEigenpair> pairs, std::size_t n, std::size_t t) {
  const std::size_t start = arc_index(0, Coin::kRight);
  CoinState state(2 * (n + 1), {0.0, 0.0});
  for (const auto& pair : pairs) {
    if (pair.u.size() != state.size()) {
      throw std::invalid_argument("eigenpair dimension does not match the walk size");
    }
    // <u | 0,R> = conj(u(0,R))
    const std::complex<double> coeff =
        pair.weight * std::pow(pair.mu, static_cast<double>(t)) * std::conj(pair.u[start]);
    for (std::size_t i = 0; i < state.size(); ++i) state[i] += coeff * pair.u[i];
  }
  return state;
}

double dtqw_cdf_correction(const BDChain& chain, const SpectralData& spec, std::size_t k) {
  check_pair(chain, spec);
  const std::size_t n = chain.n();
  if (k >= n) {
    std::ostringstream msg;
    msg << "CDF correction is defined for 0 <= k <= " << n - 1 << ", got k = " << k;
    throw std::out_of_range(msg.str());
  }
  std::vector<double> terms;
  terms.reserve(n);
  for (std::size_t l = 1; l < n; ++l) {
    const double vk = spec.component(l, k);
    const double vk1 = spec.component(l, k + 1);
    const double v0 = spec.component(l, 0);
    const double bracket = -chain.right(k) * vk * vk + chain.left(k + 1) * vk1 * vk1;
    terms.push_back(0.5 / interior_denominator(spec, l) * bracket * v0 * v0);
  }
  return accurate_sum(terms);
}

}  // namespace qwalk
