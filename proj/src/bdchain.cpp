#include "qwalk/bdchain.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace qwalk {

BDChain::BDChain(std::size_t n, std::vector<double> p_right)
    : n_(n), p_right_(std::move(p_right)), p_left_(n + 1) {
  for (std::size_t j = 0; j <= n_; ++j) p_left_[j] = 1.0 - p_right_[j];
}

BDChain make_chain(std::size_t n, std::span<const double> interior_right) {
  if (n == 0) throw InvalidChain("chain needs n >= 1 (at least two vertices)");
  if (interior_right.size() != n - 1) {
    std::ostringstream msg;
    msg << "expected " << n - 1 << " interior probabilities for n = " << n << ", got "
        << interior_right.size();
    throw InvalidChain(msg.str());
  }
  std::vector<double> p_right(n + 1, 0.0);
  p_right[0] = 1.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double p = interior_right[j - 1];
    if (!(p > 0.0 && p < 1.0)) {
      std::ostringstream msg;
      msg << "interior probability pR[" << j << "] = " << p << " is outside (0, 1)";
      throw InvalidChain(msg.str());
    }
    p_right[j] = p;
  }
  return BDChain(n, std::move(p_right));
}

BDChain make_ehrenfest(std::size_t n) {
  if (n == 0) throw InvalidChain("chain needs n >= 1 (at least two vertices)");
  std::vector<double> p_right(n + 1);
  const double dn = static_cast<double>(n);
  for (std::size_t j = 0; j <= n; ++j) p_right[j] = 1.0 - static_cast<double>(j) / dn;
  p_right[0] = 1.0;
  p_right[n] = 0.0;
  return BDChain(n, std::move(p_right));
}

BDChain make_homogeneous(std::size_t n, double p) {
  if (n == 0) throw InvalidChain("chain needs n >= 1 (at least two vertices)");
  std::vector<double> interior(n - 1, p);
  return make_chain(n, interior);
}

DenseMatrix transition_matrix(const BDChain& chain) {
  const std::size_t size = chain.vertices();
  DenseMatrix P(size, size);
  for (std::size_t j = 0; j < size; ++j) {
    if (j + 1 < size) P(j, j + 1) = chain.right(j);
    if (j > 0) P(j, j - 1) = chain.left(j);
  }
  return P;
}

StationaryDist stationary_distribution(const BDChain& chain) {
  const std::size_t n = chain.n();
  std::vector<double> weight(n + 1);
  weight[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    weight[j + 1] = weight[j] * chain.right(j) / chain.left(j + 1);
    if (!std::isfinite(weight[j + 1]) || weight[j + 1] <= 0.0) {
      std::ostringstream msg;
      msg << "stationary weight at vertex " << j + 1 << " left the representable range";
      throw std::overflow_error(msg.str());
    }
  }
  double total = 0.0;
  for (double w : weight) total += w;
  if (!std::isfinite(total)) throw std::overflow_error("stationary normalizer overflowed");

  StationaryDist out;
  out.c_pi = total;
  out.pi.resize(n + 1);
  for (std::size_t j = 0; j <= n; ++j) out.pi[j] = weight[j] / total;
  return out;
}

std::string to_string(Family family) {
  switch (family) {
    case Family::kHomogeneous: return "homogeneous";
    case Family::kEhrenfest: return "ehrenfest";
    case Family::kExplicit: return "explicit";
    case Family::kRandom: return "random";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  if (name == "homogeneous") return Family::kHomogeneous;
  if (name == "ehrenfest") return Family::kEhrenfest;
  if (name == "explicit") return Family::kExplicit;
  if (name == "random") return Family::kRandom;
  throw InvalidChain("unknown chain family '" + name +
                     "' (expected homogeneous, ehrenfest, explicit or random)");
}

BDChain build_chain(const ChainSpec& spec, std::size_t n) {
  switch (spec.family) {
    case Family::kHomogeneous:
      return make_homogeneous(n, spec.p);
    case Family::kEhrenfest:
      return make_ehrenfest(n);
    case Family::kExplicit:
      if (n != spec.interior_right.size() + 1) {
        std::ostringstream msg;
        msg << "explicit chain has " << spec.interior_right.size()
            << " interior probabilities, which fixes n = " << spec.interior_right.size() + 1
            << ", but n = " << n << " was requested";
        throw InvalidChain(msg.str());
      }
      return make_chain(n, spec.interior_right);
    case Family::kRandom: {
      if (n == 0) throw InvalidChain("chain needs n >= 1 (at least two vertices)");
      // One stream per (seed, n) so sweeps are reproducible size by size.
      std::mt19937_64 rng(spec.seed * 0x9E3779B97F4A7C15ULL + n);
      std::vector<double> interior(n - 1);
      for (auto& p : interior) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        p = 0.1 + 0.8 * u;
      }
      return make_chain(n, interior);
    }
  }
  throw InvalidChain("unhandled chain family");
}

}  // namespace qwalk
