#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qwalk/bdchain.hpp"

namespace qwalk {

/// Symmetric tridiagonal J = D^{1/2} P D^{-1/2} with zero diagonal.
struct JacobiMatrix {
  std::size_t n = 0;             // J is (n+1) x (n+1)
  std::vector<double> offdiag;   // offdiag[j] = J(j, j+1) = J(j+1, j)

  std::size_t dim() const { return n + 1; }
};

/// Eigensolver failure: iteration budget exhausted, or the spectrum is not simple.
class EigensolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full eigendecomposition of J.
///
/// Eigenvalues are strictly descending. Eigenvector l is stored contiguously
/// and normalized so that its first component is positive.
class SpectralData {
 public:
  SpectralData(std::vector<double> eigenvalues, std::vector<double> eigenvectors_row_major);

  std::size_t n() const { return eigenvalues_.size() - 1; }
  std::size_t dim() const { return eigenvalues_.size(); }

  std::span<const double> eigenvalues() const { return eigenvalues_; }
  double eigenvalue(std::size_t l) const { return eigenvalues_[l]; }

  /// v_l as a contiguous span of length n+1.
  std::span<const double> eigenvector(std::size_t l) const {
    return {eigenvectors_.data() + l * dim(), dim()};
  }
  /// v_l(j)
  double component(std::size_t l, std::size_t j) const { return eigenvectors_[l * dim() + j]; }

  /// Row l holds v_l.
  std::span<const double> eigenvector_matrix() const { return eigenvectors_; }

 private:
  std::vector<double> eigenvalues_;
  std::vector<double> eigenvectors_;
};

JacobiMatrix jacobi_matrix(const BDChain& chain);

/// Implicit-shift QL on the tridiagonal band.
SpectralData eigendecompose(const JacobiMatrix& J);

/// 1 - lambda_1.
double spectral_gap(const SpectralData& spec);

/// Returns x - J x, i.e. the normalized Laplacian applied to x.
std::vector<double> laplacian_apply(const JacobiMatrix& J, std::span<const double> x);

/// J x (band product).
std::vector<double> jacobi_apply(const JacobiMatrix& J, std::span<const double> x);

}  // namespace qwalk
