#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "corrtwo/engine_ft.hpp"
#include "corrtwo/engine_ht.hpp"
#include "corrtwo/error.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace corrtwo;
using std::numbers::pi;

TEST_CASE("Hilbert-Noda matrix") {
  SUBCASE("m = 2") {
    const Matrix n = hilbert_noda_matrix(2).values;
    CHECK(n(0, 0) == 0.0);
    CHECK(n(0, 1) == 1.0 / pi);
    CHECK(n(1, 0) == -1.0 / pi);
    CHECK(n(1, 1) == 0.0);
  }
  SUBCASE("m = 3") {
    const Matrix n = hilbert_noda_matrix(3).values;
    CHECK(n(0, 1) == 1.0 / pi);
    CHECK(n(0, 2) == 1.0 / (2 * pi));
    CHECK(n(1, 2) == 1.0 / pi);
    CHECK(n(2, 0) == -1.0 / (2 * pi));
  }
  SUBCASE("skew symmetry and entries for larger m") {
    for (std::size_t m : {4, 9, 64, 145}) {
      const Matrix n = hilbert_noda_matrix(m).values;
      const Matrix ref = oracle::noda_matrix(m);
      CHECK(n == ref);
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) CHECK(n(j, k) + n(k, j) == 0.0);
    }
  }
}

TEST_CASE("direct synchronous sum") {
  CHECK(max_abs(sync_direct(support::raw_dyn(Matrix(5, 3)), support::raw_dyn(Matrix(5, 3)))) == 0.0);

  Matrix y(2, 1);
  y(0, 0) = 1;
  y(1, 0) = -1;
  const Matrix s = sync_direct(support::raw_dyn(y), support::raw_dyn(y));
  CHECK(s(0, 0) == 2.0);

  std::mt19937_64 rng(21);
  const DynamicSpectra a = support::dyn(oracle::random_matrix(8, 5, rng));
  const DynamicSpectra b = support::dyn(oracle::random_matrix(8, 3, rng));
  CHECK(oracle::rel_diff(oracle::sync(a.values, b.values), sync_direct(a, b)) <= 1e-13);
}

TEST_CASE("Hilbert transform of the channels") {
  SUBCASE("zero column") {
    CHECK(max_abs(hilbert_transform(support::raw_dyn(Matrix(7, 2)))) == 0.0);
  }
  SUBCASE("m = 2") {
    Matrix y(2, 1);
    y(0, 0) = 3;
    y(1, 0) = 5;
    const Matrix z = hilbert_transform(support::raw_dyn(y));
    CHECK(z(0, 0) == doctest::Approx(5 / pi).epsilon(1e-15));
    CHECK(z(1, 0) == doctest::Approx(-3 / pi).epsilon(1e-15));
  }
  SUBCASE("sampled sine") {
    const std::size_t m = 16;
    const Matrix y = support::sinusoids(m, {0.0});
    const Matrix z = hilbert_transform(support::raw_dyn(y));
    CHECK(oracle::rel_diff(oracle::noda_times(y), z) <= 1e-13);
    double dot = 0;
    for (std::size_t j = 0; j < m; ++j) dot += z(j, 0) * std::cos(2 * pi * j / m);
    CHECK(dot > 0);
  }
  SUBCASE("agrees with the explicit product for many lengths") {
    std::mt19937_64 rng(22);
    for (std::size_t m = 2; m <= 70; m += 4) {
      const Matrix y = oracle::random_matrix(m, 3, rng);
      CHECK(oracle::rel_diff(oracle::noda_times(y), hilbert_transform(support::raw_dyn(y))) <= 1e-12);
    }
  }
}

TEST_CASE("Hilbert route correlation") {
  SUBCASE("zero input") {
    const CorrelationSpectra c = correlate_ht(support::raw_dyn(Matrix(6, 4)));
    CHECK(max_abs(c.sync) == 0.0);
    CHECK(max_abs(c.async) == 0.0);
  }
  SUBCASE("homo diagonal is exactly zero, matrices exactly (skew-)symmetric") {
    std::mt19937_64 rng(23);
    const CorrelationSpectra c = correlate_ht(support::dyn(oracle::random_matrix(19, 12, rng)));
    CHECK(c.is_homo);
    CHECK(c.sync == c.sync.transposed());
    for (std::size_t i = 0; i < 12; ++i) {
      CHECK(c.async(i, i) == 0.0);
      for (std::size_t j = 0; j < 12; ++j) CHECK(c.async(i, j) == -c.async(j, i));
    }
  }
  SUBCASE("random data against the oracle") {
    std::mt19937_64 rng(24);
    for (std::size_t m : {2, 3, 6, 17, 40}) {
      const DynamicSpectra a = support::dyn(oracle::random_matrix(m, 7, rng));
      const DynamicSpectra b = support::dyn(oracle::random_matrix(m, 5, rng));
      const CorrelationSpectra c = correlate_ht(a, b);
      CHECK(oracle::rel_diff(oracle::sync(a.values, b.values), c.sync) <= 1e-12);
      CHECK(oracle::max_diff(oracle::async_hilbert(a.values, b.values), c.async) <=
            1e-12 * std::max(max_abs(c.sync), max_abs(c.async)));
      CHECK(c.normalization == 1.0 / (m - 1.0));
    }
  }
  SUBCASE("quadrature sinusoids have the oracle sign") {
    const Matrix y = support::sinusoids(32, {0.0, pi / 2});
    const CorrelationSpectra c = correlate_ht(support::raw_dyn(y));
    const Matrix ref = oracle::async_hilbert(y, y);
    CHECK(c.async(0, 1) == doctest::Approx(ref(0, 1)).epsilon(1e-12));
    CHECK(std::abs(c.sync(0, 1)) < 1e-12);
  }
  SUBCASE("worker invariance") {
    std::mt19937_64 rng(25);
    const DynamicSpectra a = support::dyn(oracle::random_matrix(29, 31, rng));
    const CorrelationSpectra one = correlate_ht(a, NormalizationSpec::unit(), 1);
    for (unsigned w : {2u, 5u, 16u}) {
      const CorrelationSpectra many = correlate_ht(a, NormalizationSpec::unit(), w);
      CHECK(many.sync == one.sync);
      CHECK(many.async == one.async);
    }
  }
  SUBCASE("custom normalization scales both spectra") {
    std::mt19937_64 rng(26);
    const DynamicSpectra a = support::dyn(oracle::random_matrix(9, 4, rng));
    const CorrelationSpectra u = correlate_ht(a);
    const CorrelationSpectra c = correlate_ht(a, NormalizationSpec::custom(2.0 / 8.0));
    CHECK(oracle::rel_diff(u.sync, c.sync) > 0.5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(c.sync(i, j) == doctest::Approx(2 * u.sync(i, j)));
  }
}

TEST_CASE("Fourier and Hilbert sync agree up to the normalization ratio") {
  std::mt19937_64 rng(27);
  for (std::size_t m : {8, 15, 33}) {
    const DynamicSpectra d = support::dyn(oracle::random_matrix(m, 6, rng));
    const CorrelationSpectra ft = correlate_ft(d, NormalizationSpec::unit());
    const CorrelationSpectra ht = correlate_ht(d, NormalizationSpec::unit());
    Matrix scaled = ht.sync;
    for (double& v : scaled.values()) v *= static_cast<double>(m);
    CHECK(oracle::rel_diff(scaled, ft.sync) <= 1e-10);
  }
}
