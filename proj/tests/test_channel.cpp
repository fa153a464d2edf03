#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "ldpcosd/channel.hpp"

using namespace ldpcosd;
using namespace testutil;

using Catch::Approx;

TEST_CASE("noise variance from Eb/N0") {
  CHECK(sigma2_from_ebn0(0.0, 0.5) == Approx(1.0));
  CHECK(sigma2_from_ebn0(10.0 * std::log10(2.0), 0.5) == Approx(0.5));
  CHECK(sigma2_from_ebn0(0.0, 1.0 - 1e-9) == Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(sigma2_from_ebn0(0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(sigma2_from_ebn0(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(sigma2_from_ebn0(0.0, -0.5), std::invalid_argument);
}

TEST_CASE("bpsk modulation") {
  CHECK(modulate(BitVec(4, 0)) == std::vector<double>{-1.0, -1.0, -1.0, -1.0});
  CHECK(modulate(BitVec(3, 1)) == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(modulate(BitVec{0, 1, 0}) == std::vector<double>{-1.0, 1.0, -1.0});
}

TEST_CASE("per-frame rng streams") {
  FrameRng a(7, 3), b(7, 3);
  for (int i = 0; i < 64; ++i) CHECK(a.bits64() == b.bits64());

  // Different frame indices give different streams (first words differ).
  FrameRng c(7, 4);
  FrameRng d(7, 3);
  CHECK(c.bits64() != d.bits64());
  FrameRng e(8, 3);
  FrameRng f(7, 3);
  CHECK(e.bits64() != f.bits64());

  FrameRng g(11, 0);
  bool saw0 = false, saw1 = false;
  for (int i = 0; i < 64; ++i) {
    const Bit bit = g.bit();
    CHECK((bit == 0 || bit == 1));
    (bit ? saw1 : saw0) = true;
  }
  CHECK(saw0);
  CHECK(saw1);

  for (int i = 0; i < 1000; ++i) {
    const double u = g.uniform_pos();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("transmit determinism") {
  const std::vector<double> x(32, -1.0);
  FrameRng a(42, 17), b(42, 17);
  const auto ya = transmit(x, 0.64, a);
  const auto yb = transmit(x, 0.64, b);
  CHECK(ya == yb);

  FrameRng c(42, 18);
  CHECK(transmit(x, 0.64, c) != ya);

  FrameRng d(42, 17);
  CHECK_THROWS_AS(transmit(x, 0.0, d), std::invalid_argument);
  CHECK_THROWS_AS(transmit(x, -1.0, d), std::invalid_argument);
}

TEST_CASE("transmit noise has the requested first two moments") {
  const std::size_t n = 1'000'000;
  const double sigma2 = 0.81;
  const std::vector<double> x(n, 0.0);
  FrameRng rng(123, 0);
  const auto y = transmit(x, sigma2, rng);

  double mean = 0.0;
  for (double v : y) mean += v;
  mean /= static_cast<double>(n);

  double var = 0.0;
  for (double v : y) var += (v - mean) * (v - mean);
  var /= static_cast<double>(n - 1);

  // 5 standard errors: SE(mean) = sigma/sqrt(n), SE(var) ~ sigma^2 sqrt(2/n).
  const double sigma = std::sqrt(sigma2);
  CHECK(std::abs(mean) < 5.0 * sigma / std::sqrt(static_cast<double>(n)));
  CHECK(std::abs(var - sigma2) < 5.0 * sigma2 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("ml oracle on exact and attenuated inputs") {
  const BinaryMatrix h = hamming74();
  const auto words = brute_force_codewords(h);
  REQUIRE(words.size() == 16);

  for (const auto& w : words) {
    CHECK(ml_oracle(h, modulate(w)) == w);
    // Zeroing any single coordinate cannot change the decision (d_min = 3).
    for (std::size_t j = 0; j < 7; ++j) {
      auto y = modulate(w);
      y[j] = 0.0;
      CHECK(ml_oracle(h, y) == w);
    }
  }
}

TEST_CASE("ml oracle equals minimum euclidean distance") {
  const BinaryMatrix h = hamming74();
  const auto words = brute_force_codewords(h);
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int frame = 0; frame < 200; ++frame) {
    std::vector<double> y(7);
    for (auto& v : y) v = unif(rng);

    const BitVec* best = nullptr;
    double best_d = 0.0;
    for (const auto& w : words) {
      const auto x = modulate(w);
      double d = 0.0;
      for (std::size_t i = 0; i < 7; ++i) d += (y[i] - x[i]) * (y[i] - x[i]);
      if (!best || d < best_d || (d == best_d && w < *best)) {
        best = &w;
        best_d = d;
      }
    }
    CHECK(ml_oracle(h, y) == *best);
  }
}

TEST_CASE("ml oracle guards") {
  std::mt19937_64 rng(102);
  const BinaryMatrix wide = random_sparse(4, 28, 1, rng);  // k = 24 messages
  CHECK_THROWS_AS(ml_oracle(wide, std::vector<double>(28, 0.0)), std::invalid_argument);
  const BinaryMatrix tall = BinaryMatrix::from_dense({{1, 0}, {0, 1}, {1, 1}}, 2);
  CHECK_THROWS_AS(ml_oracle(tall, std::vector<double>(2, 0.0)), std::invalid_argument);
  const BinaryMatrix h = hamming74();
  CHECK_THROWS_AS(ml_oracle(h, std::vector<double>(6, 0.0)), std::invalid_argument);
}
