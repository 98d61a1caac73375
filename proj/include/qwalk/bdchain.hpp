#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk {

/// Raised when chain parameters violate the reflecting-wall birth-death model.
class InvalidChain : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix; only used for small-n cross checks and P itself.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Birth-death chain on the path 0..n with reflecting walls at both ends.
///
/// Instances are only produced by the factory functions below, so every
/// BDChain satisfies pR[0] = 1, pL[n] = 1, pL + pR = 1 and strict interior
/// probabilities in (0, 1).
class BDChain {
 public:
  std::size_t n() const { return n_; }
  std::size_t vertices() const { return n_ + 1; }

  double right(std::size_t j) const { return p_right_[j]; }
  double left(std::size_t j) const { return p_left_[j]; }

  std::span<const double> right_probs() const { return p_right_; }
  std::span<const double> left_probs() const { return p_left_; }

 private:
  BDChain(std::size_t n, std::vector<double> p_right);

  std::size_t n_;
  std::vector<double> p_right_;
  std::vector<double> p_left_;

  friend BDChain make_chain(std::size_t n, std::span<const double> interior_right);
  friend BDChain make_ehrenfest(std::size_t n);
};

/// Chain with pR[j] = interior_right[j-1] for j = 1..n-1.
BDChain make_chain(std::size_t n, std::span<const double> interior_right);

/// Ehrenfest urn: pL[j] = j/n.
BDChain make_ehrenfest(std::size_t n);

/// Spatially homogeneous chain, pR[j] = p on the interior.
BDChain make_homogeneous(std::size_t n, double p);

/// Row = source vertex, so rows sum to one.
DenseMatrix transition_matrix(const BDChain& chain);

struct StationaryDist {
  std::vector<double> pi;
  double c_pi = 0.0;  // normalizing constant C_pi, pi(0) = 1 / C_pi
};

/// Product-formula stationary law, evaluated by running ratio.
/// Throws std::overflow_error if an unnormalized weight leaves the finite range.
StationaryDist stationary_distribution(const BDChain& chain);

// ---------------------------------------------------------------------------
// Chain families as they appear in experiment configs.

enum class Family { kHomogeneous, kEhrenfest, kExplicit, kRandom };

std::string to_string(Family family);
/// Throws InvalidChain on an unknown name.
Family parse_family(const std::string& name);

struct ChainSpec {
  Family family = Family::kHomogeneous;
  double p = 0.5;                     // homogeneous only
  std::vector<double> interior_right;  // explicit only
  std::uint64_t seed = 0;             // random only
};

/// Builds the family member on P_{n+1}. For kExplicit, n must equal
/// interior_right.size() + 1. kRandom draws interior pR uniformly from
/// [0.1, 0.9] with a seeded mt19937_64, so results are platform independent.
BDChain build_chain(const ChainSpec& spec, std::size_t n);

}  // namespace qwalk
