#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qwalk {

namespace {

constexpr int kMaxSweepsPerEigenvalue = 50;
constexpr double kRelativeTolerance = 1e-14;
// Adjacent eigenvalues closer than this are treated as a multiplicity.
constexpr double kSimplicityFloor = 1e-13;

}  // namespace

SpectralData::SpectralData(std::vector<double> eigenvalues, std::vector<double> eigenvectors)
    : eigenvalues_(std::move(eigenvalues)), eigenvectors_(std::move(eigenvectors)) {
  if (eigenvalues_.empty() || eigenvectors_.size() != eigenvalues_.size() * eigenvalues_.size()) {
    throw std::invalid_argument("SpectralData: eigenvector matrix does not match spectrum size");
  }
}

JacobiMatrix jacobi_matrix(const BDChain& chain) {
  JacobiMatrix J;
  J.n = chain.n();
  J.offdiag.resize(J.n);
  for (std::size_t j = 0; j < J.n; ++j) {
    J.offdiag[j] = std::sqrt(chain.right(j) * chain.left(j + 1));
  }
  return J;
}

SpectralData eigendecompose(const JacobiMatrix& J) {
  const std::size_t m = J.dim();
  std::vector<double> d(m, 0.0);
  std::vector<double> e(m, 0.0);
  std::copy(J.offdiag.begin(), J.offdiag.end(), e.begin());

  // z is column-major here: column k accumulates the k-th eigenvector.
  std::vector<double> z(m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) z[i * m + i] = 1.0;
  auto Z = [&](std::size_t row, std::size_t col) -> double& { return z[col * m + row]; };

  // Off-diagonals below eps * ||J|| are negligible even next to a zero diagonal.
  double norm = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double left = j > 0 ? std::abs(e[j - 1]) : 0.0;
    norm = std::max(norm, left + std::abs(e[j]));
  }
  const double absolute_floor = std::numeric_limits<double>::epsilon() * std::max(norm, 1.0);

  for (std::size_t l = 0; l < m; ++l) {
    int sweeps = 0;
    std::size_t k;
    do {
      for (k = l; k + 1 < m; ++k) {
        const double dd = std::abs(d[k]) + std::abs(d[k + 1]);
        if (std::abs(e[k]) <= kRelativeTolerance * dd || std::abs(e[k]) <= absolute_floor) {
          break;
        }
      }
      if (k != l) {
        if (++sweeps > kMaxSweepsPerEigenvalue) {
          std::ostringstream msg;
          msg << "tridiagonal QL did not converge for eigenvalue " << l << " within "
              << kMaxSweepsPerEigenvalue << " sweeps";
          throw EigensolverError(msg.str());
        }
        // Wilkinson-type shift from the leading 2x2 block.
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[k] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        std::size_t i = k;
        bool underflow = false;
        while (i-- > l) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[k] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t row = 0; row < m; ++row) {
            f = Z(row, i + 1);
            Z(row, i + 1) = s * Z(row, i) + c * f;
            Z(row, i) = c * Z(row, i) - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[k] = 0.0;
      }
    } while (k != l);
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });

  std::vector<double> values(m);
  std::vector<double> vectors(m * m);
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t src = order[l];
    values[l] = d[src];
    double* row = vectors.data() + l * m;
    for (std::size_t j = 0; j < m; ++j) row[j] = Z(j, src);
    // v_l(0) > 0; fall back to the first nonzero entry if v_l(0) underflowed.
    std::size_t pivot = 0;
    while (pivot + 1 < m && row[pivot] == 0.0) ++pivot;
    if (row[pivot] < 0.0) {
      for (std::size_t j = 0; j < m; ++j) row[j] = -row[j];
    }
  }

  for (std::size_t l = 0; l + 1 < m; ++l) {
    if (!(values[l] - values[l + 1] > kSimplicityFloor)) {
      std::ostringstream msg;
      msg << "Jacobi spectrum is not simple: lambda_" << l << " = " << values[l] << " and lambda_"
          << l + 1 << " = " << values[l + 1];
      throw EigensolverError(msg.str());
    }
  }
  return SpectralData(std::move(values), std::move(vectors));
}

double spectral_gap(const SpectralData& spec) {
  return 1.0 - spec.eigenvalue(1);
}

std::vector<double> jacobi_apply(const JacobiMatrix& J, std::span<const double> x) {
  if (x.size() != J.dim()) {
    std::ostringstream msg;
    msg << "vector length " << x.size() << " does not match Jacobi dimension " << J.dim();
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> y(J.dim(), 0.0);
  for (std::size_t j = 0; j < J.n; ++j) {
    y[j] += J.offdiag[j] * x[j + 1];
    y[j + 1] += J.offdiag[j] * x[j];
  }
  return y;
}

std::vector<double> laplacian_apply(const JacobiMatrix& J, std::span<const double> x) {
  std::vector<double> y = jacobi_apply(J, x);
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = x[j] - y[j];
  return y;
}

}  // namespace qwalk
