#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/scaling.hpp"
#include "qwalk/szegedy.hpp"

using namespace qwalk;

namespace {

SpectralData spectrum_of(const BDChain& c) { return eigendecompose(jacobi_matrix(c)); }

double norm2(const CoinState& s) {
  double t = 0.0;
  for (const auto& z : s) t += std::norm(z);
  return std::sqrt(t);
}

CoinState random_state(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CoinState s(2 * (n + 1));
  for (auto& z : s) z = {g(rng), g(rng)};
  const double r = norm2(s);
  for (auto& z : s) z /= r;
  return s;
}

double sup_diff(const CoinState& a, const CoinState& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

const std::vector<double> kSymmetric{0.5};

}  // namespace

TEST_CASE("lift_vector") {
  SUBCASE("n = 1, v = (1, 0) lands on (0, R)") {
    const std::vector<double> v{1.0, 0.0};
    const auto u = lift_vector(make_chain(1, {}), v);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(u[i] == (i == arc_index(0, Coin::kRight) ? std::complex<double>(1.0) : std::complex<double>(0.0)));
    }
  }
  SUBCASE("n = 2 symmetric, v_1") {
    const double r = 1.0 / std::sqrt(2.0);
    const std::vector<double> v{r, 0.0, -r};
    const auto u = lift_vector(make_chain(2, kSymmetric), v);
    CHECK(u[arc_index(0, Coin::kRight)] == r);
    CHECK(u[arc_index(2, Coin::kLeft)] == -r);
    CHECK(u[arc_index(1, Coin::kLeft)] == 0.0);
    CHECK(u[arc_index(1, Coin::kRight)] == 0.0);
    CHECK(std::abs(norm2(u) - 1.0) <= 1e-15);
  }
  SUBCASE("preserves unit norm") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    for (std::size_t n : {1u, 4u, 33u, 200u}) {
      const auto c = oracle::random_chain(rng, n);
      std::vector<double> v(n + 1);
      double r = 0.0;
      for (auto& x : v) {
        x = g(rng);
        r += x * x;
      }
      for (auto& x : v) x /= std::sqrt(r);
      CHECK(std::abs(norm2(lift_vector(c, v)) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("length mismatch") {
    const std::vector<double> v{1.0};
    CHECK_THROWS_AS(lift_vector(make_chain(1, {}), v), std::invalid_argument);
  }
}

TEST_CASE("apply_U") {
  SUBCASE("n = 1 period-two orbit") {
    const SzegedyOperator op(make_chain(1, {}));
    const auto once = apply_U(op, initial_state(1));
    CHECK(once[arc_index(1, Coin::kLeft)] == 1.0);
    CHECK(norm2(once) == 1.0);
    const auto twice = apply_U(op, once);
    CHECK(twice == initial_state(1));
  }
  SUBCASE("unitary on random states") {
    std::mt19937_64 rng(2);
    for (std::size_t n : {1u, 20u, 500u}) {
      const SzegedyOperator op(oracle::random_chain(rng, n));
      const auto s = random_state(rng, n);
      CHECK(std::abs(norm2(apply_U(op, s)) - 1.0) <= 1e-12);
    }
  }
  SUBCASE("coin and shift are involutions") {
    std::mt19937_64 rng(3);
    for (std::size_t n : {1u, 2u, 17u, 300u}) {
      const SzegedyOperator op(oracle::random_chain(rng, n));
      const auto s = random_state(rng, n);
      auto c2 = s;
      op.apply_coin(c2);
      op.apply_coin(c2);
      CHECK(sup_diff(c2, s) <= 1e-13);
      auto s2 = s;
      op.apply_shift(s2);
      op.apply_shift(s2);
      CHECK(sup_diff(s2, s) <= 1e-13);
    }
  }
  SUBCASE("matches the dense S C built from the definitions") {
    std::mt19937_64 rng(4);
    for (std::size_t n = 1; n <= 12; ++n) {
      const auto c = oracle::random_chain(rng, n);
      const SzegedyOperator op(c);
      const auto U = oracle::dense_szegedy(c);
      const auto s = random_state(rng, n);
      const auto got = apply_U(op, s);
      CoinState expected(s.size());
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t k = 0; k < s.size(); ++k) expected[i] += U[i][k] * s[k];
      CHECK(sup_diff(got, expected) <= 1e-14);
    }
  }
  SUBCASE("wrong state size") {
    const SzegedyOperator op(make_chain(1, {}));
    CoinState bad(3);
    CHECK_THROWS_AS(op.apply(bad), std::invalid_argument);
  }
}

TEST_CASE("dtqw_distribution") {
  std::mt19937_64 rng(5);
  const SzegedyOperator any(oracle::random_chain(rng, 6));
  const auto d0 = dtqw_distribution(any, 0);
  CHECK(d0[0] == 1.0);
  for (std::size_t j = 1; j < d0.size(); ++j) CHECK(d0[j] == 0.0);

  const SzegedyOperator two(make_chain(1, {}));
  for (std::size_t t = 0; t < 6; ++t) {
    const auto d = dtqw_distribution(two, t);
    CHECK(d[0] == (t % 2 == 0 ? 1.0 : 0.0));
    CHECK(d[1] == (t % 2 == 0 ? 0.0 : 1.0));
  }

  const auto d1 = dtqw_distribution(SzegedyOperator(make_chain(2, kSymmetric)), 1);
  CHECK(d1 == std::vector<double>{0.0, 1.0, 0.0});

  for (std::size_t t : {3u, 50u, 1000u}) {
    double s = 0.0;
    for (double p : dtqw_distribution(any, t)) s += p;
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
}

TEST_CASE("dtqw_time_average_empirical") {
  const SzegedyOperator two(make_chain(1, {}));
  for (std::size_t T : {2u, 10u, 1000u}) {
    const auto avg = dtqw_time_average_empirical(two, T);
    CHECK(avg.kind == AverageKind::kDtqwEmpirical);
    CHECK(*avg.horizon == static_cast<double>(T));
    CHECK(avg.probs[0] == 0.5);
    CHECK(avg.probs[1] == 0.5);
  }
  const auto three = dtqw_time_average_empirical(two, 3);
  CHECK(three.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(three.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto sym = dtqw_time_average_empirical(SzegedyOperator(make_chain(2, kSymmetric)), 100000);
  CHECK(oracle::sup_distance(sym.probs, {0.25, 0.5, 0.25}) <= 5e-3);

  CHECK_THROWS_AS(dtqw_time_average_empirical(two, 0), std::invalid_argument);
}

TEST_CASE("dtqw_time_average closed form") {
  SUBCASE("n = 1") {
    const auto c = make_chain(1, {});
    const auto avg = dtqw_time_average(c, spectrum_of(c));
    CHECK(avg.kind == AverageKind::kDtqwClosed);
    CHECK(avg.probs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(avg.probs[1] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("symmetric n = 2 equals pi") {
    const auto c = make_chain(2, kSymmetric);
    const auto avg = dtqw_time_average(c, spectrum_of(c));
    CHECK(avg.probs[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(avg.probs[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(avg.probs[2] == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("normalized and nonnegative") {
    std::mt19937_64 rng(6);
    for (std::size_t n : {3u, 30u, 300u}) {
      const auto c = oracle::random_chain(rng, n, 0.3, 0.7);
      const auto avg = dtqw_time_average(c, spectrum_of(c));
      double s = 0.0;
      for (double p : avg.probs) {
        CHECK(p >= 0.0);
        s += p;
      }
      CHECK(std::abs(s - 1.0) <= 1e-10);
    }
  }
  SUBCASE("agrees with the simulated Cesaro mean, improving with T") {
    std::mt19937_64 rng(7);
    for (std::size_t n : {4u, 9u}) {
      const auto c = oracle::random_chain(rng, n);
      const auto closed = dtqw_time_average(c, spectrum_of(c)).probs;
      const SzegedyOperator op(c);
      const double d3 = oracle::sup_distance(dtqw_time_average_empirical(op, 1000).probs, closed);
      const double d5 = oracle::sup_distance(dtqw_time_average_empirical(op, 100000).probs, closed);
      CHECK(d5 <= 5e-3);
      CHECK(d5 <= d3);
    }
  }
  SUBCASE("rejects spectral data of another size") {
    const auto c = make_chain(2, kSymmetric);
    CHECK_THROWS_AS(dtqw_time_average(c, spectrum_of(make_chain(1, {}))), std::invalid_argument);
  }
}

TEST_CASE("lifted_eigenpairs") {
  SUBCASE("n = 1 has only the edge pairs") {
    const auto c = make_chain(1, {});
    const auto pairs = lifted_eigenpairs(c, spectrum_of(c));
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].mu == std::complex<double>(1.0, 0.0));
    CHECK(pairs[1].mu == std::complex<double>(-1.0, 0.0));
  }
  SUBCASE("symmetric n = 2: mu = +-i and <u, u> = 2") {
    const auto c = make_chain(2, kSymmetric);
    const auto pairs = lifted_eigenpairs(c, spectrum_of(c));
    REQUIRE(pairs.size() == 4);
    CHECK(std::abs(pairs[2].mu - std::complex<double>(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(pairs[3].mu - std::complex<double>(0.0, -1.0)) <= 1e-15);
    for (std::size_t i : {2u, 3u}) CHECK(std::abs(norm2(pairs[i].u) * norm2(pairs[i].u) - 2.0) <= 1e-12);
  }
  SUBCASE("residuals and norms on random chains") {
    std::mt19937_64 rng(8);
    for (std::size_t n : {3u, 10u, 25u}) {
      const auto c = oracle::random_chain(rng, n);
      const auto spec = spectrum_of(c);
      const SzegedyOperator op(c);
      const auto pairs = lifted_eigenpairs(c, spec);
      CHECK(pairs.size() == 2 * n);
      for (const auto& p : pairs) {
        CHECK(std::abs(std::abs(p.mu) - 1.0) <= 1e-12);
        const auto Uu = apply_U(op, p.u);
        double res = 0.0;
        for (std::size_t i = 0; i < Uu.size(); ++i) res = std::max(res, std::abs(Uu[i] - p.mu * p.u[i]));
        CHECK(res <= 1e-10);
        if (p.branch != 0) {
          const double lambda = spec.eigenvalue(p.level);
          CHECK(std::abs(norm2(p.u) * norm2(p.u) - 2.0 * (1.0 - lambda * lambda)) <= 1e-10);
        }
      }
    }
  }
  SUBCASE("the -1 eigenvector is the lift of v_n, not v_{n-1}") {
    std::mt19937_64 rng(9);
    const auto c = oracle::random_chain(rng, 6);
    const auto spec = spectrum_of(c);
    const SzegedyOperator op(c);
    const auto wrong = lift_vector(c, spec.eigenvector(5));
    const auto Uw = apply_U(op, wrong);
    double res = 0.0;
    for (std::size_t i = 0; i < Uw.size(); ++i) res = std::max(res, std::abs(Uw[i] + wrong[i]));
    CHECK(res > 1e-3);
  }
  SUBCASE("eigenpair expansion reproduces the walk") {
    std::mt19937_64 rng(10);
    for (std::size_t n : {1u, 2u, 7u, 12u}) {
      const auto c = oracle::random_chain(rng, n);
      const auto pairs = lifted_eigenpairs(c, spectrum_of(c));
      const SzegedyOperator op(c);
      auto state = initial_state(n);
      for (std::size_t t = 0; t <= 50; ++t) {
        CHECK(sup_diff(spectral_evolve(pairs, n, t), state) <= 1e-9);
        op.apply(state);
      }
    }
  }
}

TEST_CASE("dtqw_cdf_correction") {
  SUBCASE("symmetric n = 2 hand values") {
    const auto c = make_chain(2, kSymmetric);
    const auto spec = spectrum_of(c);
    CHECK(std::abs(dtqw_cdf_correction(c, spec, 0) + 0.125) <= 1e-14);
    CHECK(std::abs(dtqw_cdf_correction(c, spec, 1) - 0.125) <= 1e-14);
    CHECK_THROWS_AS(dtqw_cdf_correction(c, spec, 2), std::out_of_range);
  }
  SUBCASE("n = 1 has no interior terms") {
    const auto c = make_chain(1, {});
    CHECK(dtqw_cdf_correction(c, spectrum_of(c), 0) == 0.0);
  }
  SUBCASE("F_D - F_C equals the correction on random chains") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 15; ++rep) {
      const std::size_t n = 1 + rng() % 50;
      const auto c = oracle::random_chain(rng, n);
      const auto spec = spectrum_of(c);
      const auto Fc = step_cdf(ctqw_time_average(spec));
      const auto Fd = step_cdf(dtqw_time_average(c, spec));
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(std::abs(Fd.values[k] - Fc.values[k] - dtqw_cdf_correction(c, spec, k)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("Cesaro error shrinks across decades of T") {
  std::mt19937_64 rng(12);
  const auto c = oracle::random_chain(rng, 8);
  const auto closed = dtqw_time_average(c, spectrum_of(c)).probs;
  const SzegedyOperator op(c);
  double previous = 1.0;
  for (std::size_t T : {1000u, 10000u, 100000u}) {
    const double d = oracle::sup_distance(dtqw_time_average_empirical(op, T).probs, closed);
    CHECK(d <= 2.0 * previous);
    previous = d;
  }
}
