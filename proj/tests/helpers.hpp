#pragma once
// Shared test apparatus: independent dense GF(2) oracles (no reuse of the
// library's elimination), small code constructions, and seeded generators.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ldpcosd/gf2.hpp"

namespace testutil {

using ldpcosd::BinaryMatrix;
using ldpcosd::Bit;
using ldpcosd::BitVec;

using DenseMat = std::vector<BitVec>;  // row-major, one byte per bit

inline DenseMat dense_from(const BinaryMatrix& h) {
  DenseMat d(static_cast<std::size_t>(h.rows()), BitVec(static_cast<std::size_t>(h.cols()), 0));
  for (int r = 0; r < h.rows(); ++r)
    for (std::int32_t c : h.row(r)) d[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
  return d;
}

// Plain-vector Gaussian elimination, used as the rank oracle.
inline int dense_rank(DenseMat a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  std::size_t rank = 0;
  for (std::size_t j = 0; j < cols && rank < rows; ++j) {
    std::size_t p = rank;
    while (p < rows && !a[p][j]) ++p;
    if (p == rows) continue;
    std::swap(a[rank], a[p]);
    for (std::size_t i = 0; i < rows; ++i)
      if (i != rank && a[i][j])
        for (std::size_t k = 0; k < cols; ++k) a[i][k] ^= a[rank][k];
    ++rank;
  }
  return static_cast<int>(rank);
}

inline BitVec dense_matvec(const DenseMat& a, const BitVec& v) {
  BitVec out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    Bit acc = 0;
    for (std::size_t j = 0; j < v.size(); ++j) acc ^= static_cast<Bit>(a[i][j] & v[j]);
    out[i] = acc;
  }
  return out;
}

inline BitVec xor_vec(BitVec a, const BitVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
  return a;
}

// All codewords of a small code by exhaustive 2^N enumeration (N <= 20).
inline std::vector<BitVec> brute_force_codewords(const BinaryMatrix& h) {
  const int n = h.cols();
  const DenseMat d = dense_from(h);
  std::vector<BitVec> words;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitVec w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) w[static_cast<std::size_t>(i)] = static_cast<Bit>((v >> i) & 1u);
    if (ldpcosd::is_zero(dense_matvec(d, w))) words.push_back(std::move(w));
  }
  return words;
}

inline BinaryMatrix hamming74() {
  return BinaryMatrix::from_dense(
      {{1, 0, 1, 0, 1, 0, 1}, {0, 1, 1, 0, 0, 1, 1}, {0, 0, 0, 1, 1, 1, 1}}, 7);
}

inline BinaryMatrix repetition3() {
  return BinaryMatrix::from_dense({{1, 1, 0}, {0, 1, 1}}, 3);
}

// Random sparse matrix with the given column weight (rows chosen without
// replacement per column); may be rank deficient.
inline BinaryMatrix random_sparse(int rows, int cols, int col_weight, std::mt19937_64& rng) {
  std::vector<std::vector<std::int32_t>> row_adj(static_cast<std::size_t>(rows));
  for (int j = 0; j < cols; ++j) {
    std::vector<int> picks;
    while (static_cast<int>(picks.size()) < std::min(col_weight, rows)) {
      const int r = static_cast<int>(rng() % static_cast<std::uint64_t>(rows));
      bool dup = false;
      for (int p : picks) dup = dup || p == r;
      if (!dup) picks.push_back(r);
    }
    for (int r : picks) row_adj[static_cast<std::size_t>(r)].push_back(j);
  }
  return BinaryMatrix::from_rows(rows, cols, std::move(row_adj));
}

// Random matrix of independent fair bits.
inline BinaryMatrix random_dense(int rows, int cols, std::mt19937_64& rng) {
  DenseMat d(static_cast<std::size_t>(rows), BitVec(static_cast<std::size_t>(cols), 0));
  for (auto& row : d)
    for (auto& b : row) b = static_cast<Bit>(rng() & 1u);
  return BinaryMatrix::from_dense(d, cols);
}

// Full-rank sparse code for decoding tests; retries seeds until full rank
// (rank checked with the dense oracle).
inline BinaryMatrix random_code(int rows, int cols, int col_weight, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    BinaryMatrix h = random_sparse(rows, cols, col_weight, rng);
    bool empty_row = false;
    for (int r = 0; r < rows; ++r) empty_row = empty_row || h.row(r).empty();
    if (!empty_row && dense_rank(dense_from(h)) == rows) return h;
  }
  throw std::runtime_error("random_code: no full-rank construction found");
}

inline std::vector<double> random_frame(const BitVec& codeword, double sigma, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> y(codeword.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = (codeword[i] ? 1.0 : -1.0) + sigma * gauss(rng);
  return y;
}

inline BitVec random_bits(int n, std::mt19937_64& rng) {
  BitVec v(static_cast<std::size_t>(n));
  for (auto& b : v) b = static_cast<Bit>(rng() & 1u);
  return v;
}

}  // namespace testutil
