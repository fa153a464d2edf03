#pragma once
// BPSK over AWGN: noise-variance convention, modulation, a reproducible
// per-frame noise stream, and the brute-force ML oracle used by tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "ldpcosd/gf2.hpp"

namespace ldpcosd {

enum class SourceMode { AllZero, RandomCodeword };

struct ChannelConfig {
  double ebn0_db = 2.0;
  double code_rate = 0.5;  // K/N
  std::uint64_t seed = 1;
  SourceMode source_mode = SourceMode::AllZero;
};

// Unit-energy BPSK, Eb/N0 convention: sigma^2 = 1 / (2 R 10^(dB/10)).
inline double sigma2_from_ebn0(double ebn0_db, double rate) {
  detail::require(rate > 0.0 && rate < 1.0, "sigma2_from_ebn0: rate must be in (0, 1)");
  return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

inline std::vector<double> modulate(const BitVec& c) {
  std::vector<double> x(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) x[i] = c[i] ? 1.0 : -1.0;
  return x;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace detail

// Deterministic per-frame noise stream: the engine seed mixes the campaign
// seed with the frame index, so frame i's noise is independent of how frames
// are distributed over workers.  Gaussians come from a fixed Box-Muller
// implementation rather than std::normal_distribution, whose output is
// implementation-defined.
class FrameRng {
 public:
  FrameRng(std::uint64_t seed, std::uint64_t frame_index) {
    std::uint64_t s = seed;
    std::uint64_t a = detail::splitmix64(s);
    s ^= frame_index * 0xD1B54A32D192ED03ULL + 0x8BB84B93962EACC9ULL;
    std::uint64_t b = detail::splitmix64(s);
    eng_.seed(a ^ (b << 1));
  }

  std::uint64_t bits64() { return eng_(); }

  Bit bit() { return static_cast<Bit>(eng_() >> 63); }

  // Uniform in (0, 1]: never zero, so log() below is safe.
  double uniform_pos() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_pos();
    const double u2 = uniform_pos();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

inline std::vector<double> transmit(const std::vector<double>& x, double sigma2, FrameRng& rng) {
  detail::require(sigma2 > 0.0, "transmit: noise variance must be positive");
  const double sigma = std::sqrt(sigma2);
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * rng.normal();
  return y;
}

// Exhaustive ML decoding by codeword enumeration; minimizing Euclidean
// distance to modulate(c) equals maximizing correlation.  Ties resolved by
// lexicographic codeword order.
inline BitVec ml_oracle(const BinaryMatrix& h, const std::vector<double>& y) {
  detail::require(static_cast<int>(y.size()) == h.cols(), "ml_oracle: y length mismatch");
  const int k = h.cols() - h.rows();
  detail::require(k >= 0 && k <= 20, "ml_oracle: code too large for exhaustive enumeration");
  SystematicEncoder enc(h);

  BitVec best;
  double best_corr = 0.0;
  BitVec msg(static_cast<std::size_t>(k), 0);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t m = 0; m < total; ++m) {
    for (int j = 0; j < k; ++j) msg[static_cast<std::size_t>(j)] = static_cast<Bit>((m >> j) & 1u);
    BitVec cw = enc.encode(msg);
    double corr = 0.0;
    for (std::size_t i = 0; i < cw.size(); ++i) corr += cw[i] ? y[i] : -y[i];
    if (best.empty() || corr > best_corr || (corr == best_corr && cw < best)) {
      best = std::move(cw);
      best_corr = corr;
    }
  }
  return best;
}

}  // namespace ldpcosd
