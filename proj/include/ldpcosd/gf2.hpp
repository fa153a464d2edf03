#pragma once
// GF(2) linear algebra for parity-check codes: sparse binary matrices,
// bit-packed dense elimination with column permutations, syndromes, and a
// systematic encoder.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ldpcosd {

using Bit = std::uint8_t;
using BitVec = std::vector<Bit>;

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace detail

// Column (or row) permutation stored as a forward map: position j of the
// permuted object is taken from position forward()[j] of the original.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::int32_t> forward) : fwd_(std::move(forward)) {
    std::vector<char> seen(fwd_.size(), 0);
    for (std::int32_t v : fwd_) {
      detail::require(v >= 0 && static_cast<std::size_t>(v) < fwd_.size() && !seen[v],
                      "permutation: forward map is not a bijection");
      seen[v] = 1;
    }
  }

  static Permutation identity(int n) {
    std::vector<std::int32_t> f(static_cast<std::size_t>(n));
    std::iota(f.begin(), f.end(), 0);
    return Permutation(std::move(f));
  }

  int size() const { return static_cast<int>(fwd_.size()); }
  std::int32_t operator[](int pos) const { return fwd_[static_cast<std::size_t>(pos)]; }
  const std::vector<std::int32_t>& forward() const { return fwd_; }

  bool is_identity() const {
    for (int j = 0; j < size(); ++j)
      if (fwd_[static_cast<std::size_t>(j)] != j) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<std::int32_t> inv(fwd_.size());
    for (int j = 0; j < size(); ++j) inv[static_cast<std::size_t>(fwd_[static_cast<std::size_t>(j)])] = j;
    return Permutation(std::move(inv));
  }

  // out[j] = v[forward()[j]]
  template <class T>
  std::vector<T> apply(const std::vector<T>& v) const {
    detail::require(v.size() == fwd_.size(), "permutation: length mismatch");
    std::vector<T> out(v.size());
    for (std::size_t j = 0; j < fwd_.size(); ++j) out[j] = v[static_cast<std::size_t>(fwd_[j])];
    return out;
  }

 private:
  std::vector<std::int32_t> fwd_;
};

// compose(a, b): permutation equivalent to applying a first, then b.
// compose(a, b).apply(v) == b.apply(a.apply(v)).
inline Permutation compose(const Permutation& a, const Permutation& b) {
  detail::require(a.size() == b.size(), "permutation: size mismatch in compose");
  std::vector<std::int32_t> f(static_cast<std::size_t>(a.size()));
  for (int j = 0; j < a.size(); ++j) f[static_cast<std::size_t>(j)] = a[b[j]];
  return Permutation(std::move(f));
}

// Dense bit-packed matrix, row major, 64 bits per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols)
      : rows_(rows),
        cols_(cols),
        words_((cols + 63) / 64),
        bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(words_), 0) {
    detail::require(rows >= 0 && cols >= 0, "bit matrix: negative dimension");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int words_per_row() const { return words_; }

  bool get(int r, int c) const {
    return (word(r, c >> 6) >> (c & 63)) & 1u;
  }
  void set(int r, int c) { word(r, c >> 6) |= std::uint64_t{1} << (c & 63); }
  void clear(int r, int c) { word(r, c >> 6) &= ~(std::uint64_t{1} << (c & 63)); }
  void assign(int r, int c, bool v) { v ? set(r, c) : clear(r, c); }

  std::uint64_t* row_ptr(int r) { return bits_.data() + static_cast<std::size_t>(r) * words_; }
  const std::uint64_t* row_ptr(int r) const { return bits_.data() + static_cast<std::size_t>(r) * words_; }

  void xor_row_into(int dst, int src) {
    std::uint64_t* d = row_ptr(dst);
    const std::uint64_t* s = row_ptr(src);
    for (int w = 0; w < words_; ++w) d[w] ^= s[w];
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    std::uint64_t* pa = row_ptr(a);
    std::uint64_t* pb = row_ptr(b);
    for (int w = 0; w < words_; ++w) std::swap(pa[w], pb[w]);
  }

  bool row_is_zero(int r) const {
    const std::uint64_t* p = row_ptr(r);
    for (int w = 0; w < words_; ++w)
      if (p[w]) return false;
    return true;
  }

  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_;
  }

 private:
  std::uint64_t& word(int r, int w) { return bits_[static_cast<std::size_t>(r) * words_ + w]; }
  const std::uint64_t& word(int r, int w) const { return bits_[static_cast<std::size_t>(r) * words_ + w]; }

  int rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Sparse binary matrix held as sorted adjacency lists in both directions.
// Indices are 0-based internally.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;

  // Both views supplied; they are cross-validated against each other.
  BinaryMatrix(int rows, int cols, std::vector<std::vector<std::int32_t>> row_adj,
               std::vector<std::vector<std::int32_t>> col_adj)
      : rows_(rows), cols_(cols), row_adj_(std::move(row_adj)), col_adj_(std::move(col_adj)) {
    detail::require(rows >= 0 && cols >= 0, "binary matrix: negative dimension");
    detail::require(static_cast<int>(row_adj_.size()) == rows, "binary matrix: row view size mismatch");
    detail::require(static_cast<int>(col_adj_.size()) == cols, "binary matrix: column view size mismatch");
    validate_lists(row_adj_, cols, "row");
    validate_lists(col_adj_, rows, "column");
    auto derived = transpose_view(row_adj_, rows_, cols_);
    detail::require(derived == col_adj_, "binary matrix: row and column views disagree");
  }

  static BinaryMatrix from_rows(int rows, int cols, std::vector<std::vector<std::int32_t>> row_adj) {
    detail::require(static_cast<int>(row_adj.size()) == rows, "binary matrix: row view size mismatch");
    for (auto& r : row_adj) std::sort(r.begin(), r.end());
    validate_lists(row_adj, cols, "row");
    auto col_adj = transpose_view(row_adj, rows, cols);
    return BinaryMatrix(rows, cols, std::move(row_adj), std::move(col_adj));
  }

  static BinaryMatrix from_dense(const std::vector<BitVec>& dense_rows, int cols) {
    std::vector<std::vector<std::int32_t>> row_adj(dense_rows.size());
    for (std::size_t r = 0; r < dense_rows.size(); ++r) {
      detail::require(static_cast<int>(dense_rows[r].size()) == cols, "binary matrix: ragged dense rows");
      for (int c = 0; c < cols; ++c)
        if (dense_rows[r][static_cast<std::size_t>(c)]) row_adj[r].push_back(c);
    }
    return from_rows(static_cast<int>(dense_rows.size()), cols, std::move(row_adj));
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  // Code dimension assuming full-rank H; callers needing the true rank use eliminate().
  int message_length() const { return cols_ - rows_; }

  const std::vector<std::int32_t>& row(int m) const { return row_adj_[static_cast<std::size_t>(m)]; }
  const std::vector<std::int32_t>& col(int n) const { return col_adj_[static_cast<std::size_t>(n)]; }

  std::size_t entry_count() const {
    std::size_t s = 0;
    for (const auto& r : row_adj_) s += r.size();
    return s;
  }

  bool at(int r, int c) const {
    const auto& lst = row_adj_[static_cast<std::size_t>(r)];
    return std::binary_search(lst.begin(), lst.end(), c);
  }

  int max_row_degree() const { return max_degree(row_adj_); }
  int max_col_degree() const { return max_degree(col_adj_); }

  BitMatrix to_dense() const {
    BitMatrix d(rows_, cols_);
    for (int r = 0; r < rows_; ++r)
      for (std::int32_t c : row_adj_[static_cast<std::size_t>(r)]) d.set(r, c);
    return d;
  }

 private:
  static void validate_lists(const std::vector<std::vector<std::int32_t>>& adj, int bound, const char* kind) {
    for (const auto& lst : adj) {
      for (std::size_t i = 0; i < lst.size(); ++i) {
        detail::require(lst[i] >= 0 && lst[i] < bound,
                        std::string("binary matrix: ") + kind + " entry out of range");
        detail::require(i == 0 || lst[i] > lst[i - 1],
                        std::string("binary matrix: ") + kind + " entries not strictly increasing");
      }
    }
  }

  static std::vector<std::vector<std::int32_t>> transpose_view(
      const std::vector<std::vector<std::int32_t>>& row_adj, int rows, int cols) {
    std::vector<std::vector<std::int32_t>> col_adj(static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r)
      for (std::int32_t c : row_adj[static_cast<std::size_t>(r)]) col_adj[static_cast<std::size_t>(c)].push_back(r);
    return col_adj;
  }

  static int max_degree(const std::vector<std::vector<std::int32_t>>& adj) {
    std::size_t m = 0;
    for (const auto& l : adj) m = std::max(m, l.size());
    return static_cast<int>(m);
  }

  int rows_ = 0, cols_ = 0;
  std::vector<std::vector<std::int32_t>> row_adj_;
  std::vector<std::vector<std::int32_t>> col_adj_;
};

inline BitVec syndrome(const BinaryMatrix& h, const BitVec& v) {
  detail::require(static_cast<int>(v.size()) == h.cols(), "syndrome: vector length mismatch");
  BitVec s(static_cast<std::size_t>(h.rows()), 0);
  for (int m = 0; m < h.rows(); ++m) {
    Bit acc = 0;
    for (std::int32_t c : h.row(m)) acc ^= v[static_cast<std::size_t>(c)];
    s[static_cast<std::size_t>(m)] = acc;
  }
  return s;
}

inline bool is_zero(const BitVec& v) {
  return std::all_of(v.begin(), v.end(), [](Bit b) { return b == 0; });
}

// Result of Gauss-Jordan elimination of H under a prescribed column visiting
// order.  lambda2 maps final column positions to *input* positions (i.e. to
// positions of the column-order-permuted matrix): pivot columns first, in
// visiting order, then the dependent columns, also in visiting order.
// reduced is rank x cols with an identity in the leftmost rank columns.
// transform is the full set of accumulated row operations; rows >= rank
// combine input rows to zero and encode row-space membership constraints.
struct EliminationResult {
  int rank = 0;
  Permutation lambda2;
  BitMatrix reduced;
  BitMatrix transform;
};

inline EliminationResult eliminate(const BinaryMatrix& h, const Permutation& column_order) {
  detail::require(column_order.size() == h.cols(), "eliminate: column order size mismatch");
  const int m = h.rows();
  const int n = h.cols();

  // Work on [A | I] where A is H with columns permuted by column_order.
  BitMatrix a(m, n + m);
  for (int j = 0; j < n; ++j)
    for (std::int32_t r : h.col(column_order[j])) a.set(r, j);
  for (int i = 0; i < m; ++i) a.set(i, n + i);

  std::vector<std::int32_t> pivots, deferred;
  pivots.reserve(static_cast<std::size_t>(m));
  int rank = 0;
  for (int j = 0; j < n; ++j) {
    int p = -1;
    for (int i = rank; i < m; ++i) {
      if (a.get(i, j)) {
        p = i;
        break;
      }
    }
    if (p < 0) {
      deferred.push_back(j);
      continue;
    }
    a.swap_rows(rank, p);
    for (int i = 0; i < m; ++i)
      if (i != rank && a.get(i, j)) a.xor_row_into(i, rank);
    pivots.push_back(j);
    ++rank;
    if (rank == m) {
      for (int k = j + 1; k < n; ++k) deferred.push_back(k);
      break;
    }
  }

  std::vector<std::int32_t> order(std::move(pivots));
  order.insert(order.end(), deferred.begin(), deferred.end());

  EliminationResult out;
  out.rank = rank;
  out.lambda2 = Permutation(std::move(order));
  out.reduced = BitMatrix(rank, n);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < n; ++j)
      if (a.get(i, out.lambda2[j])) out.reduced.set(i, j);
  out.transform = BitMatrix(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (a.get(i, n + j)) out.transform.set(i, j);
  return out;
}

// Applies the elimination's row transform to a length-rows right-hand side,
// returning the first rank entries.  Throws if a dropped (dependent) row
// yields a nonzero entry, i.e. the right-hand side is outside the row space.
inline BitVec apply_row_transform(const EliminationResult& er, const BitVec& rhs) {
  const int m = er.transform.rows();
  detail::require(static_cast<int>(rhs.size()) == m, "apply_row_transform: rhs length mismatch");
  BitVec out(static_cast<std::size_t>(er.rank), 0);
  for (int i = 0; i < m; ++i) {
    Bit acc = 0;
    for (int j = 0; j < m; ++j)
      if (rhs[static_cast<std::size_t>(j)] && er.transform.get(i, j)) acc ^= 1;
    if (i < er.rank) {
      out[static_cast<std::size_t>(i)] = acc;
    } else if (acc) {
      throw std::runtime_error("apply_row_transform: right-hand side is inconsistent with the row space");
    }
  }
  return out;
}

// Systematic encoder derived from a full-row-rank parity-check matrix.
// Message bits occupy the dependent (non-pivot) columns of the natural-order
// elimination; parity bits occupy the pivot columns.
class SystematicEncoder {
 public:
  explicit SystematicEncoder(const BinaryMatrix& h)
      : n_(h.cols()), k_(h.cols() - h.rows()), parity_words_((h.rows() + 63) / 64) {
    const int m = h.rows();
    EliminationResult er = eliminate(h, Permutation::identity(n_));
    if (er.rank != m) {
      throw std::invalid_argument("systematic encoder: parity-check matrix is rank deficient (rank " +
                                  std::to_string(er.rank) + " of " + std::to_string(m) + ")");
    }
    parity_cols_.resize(static_cast<std::size_t>(m));
    message_cols_.resize(static_cast<std::size_t>(k_));
    for (int i = 0; i < m; ++i) parity_cols_[static_cast<std::size_t>(i)] = er.lambda2[i];
    for (int j = 0; j < k_; ++j) message_cols_[static_cast<std::size_t>(j)] = er.lambda2[m + j];
    pgen_.assign(static_cast<std::size_t>(k_),
                 std::vector<std::uint64_t>(static_cast<std::size_t>(parity_words_), 0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < k_; ++j)
        if (er.reduced.get(i, m + j))
          pgen_[static_cast<std::size_t>(j)][static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
  }

  int message_length() const { return k_; }
  int codeword_length() const { return n_; }
  const std::vector<std::int32_t>& message_columns() const { return message_cols_; }

  BitVec encode(const BitVec& message) const {
    detail::require(static_cast<int>(message.size()) == k_, "encode: message length mismatch");
    std::vector<std::uint64_t> p(static_cast<std::size_t>(parity_words_), 0);
    for (int j = 0; j < k_; ++j) {
      if (!message[static_cast<std::size_t>(j)]) continue;
      const auto& g = pgen_[static_cast<std::size_t>(j)];
      for (int w = 0; w < parity_words_; ++w) p[static_cast<std::size_t>(w)] ^= g[static_cast<std::size_t>(w)];
    }
    BitVec cw(static_cast<std::size_t>(n_), 0);
    for (int j = 0; j < k_; ++j)
      cw[static_cast<std::size_t>(message_cols_[static_cast<std::size_t>(j)])] = message[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < parity_cols_.size(); ++i)
      cw[static_cast<std::size_t>(parity_cols_[i])] =
          static_cast<Bit>((p[i >> 6] >> (i & 63)) & 1u);
    return cw;
  }

 private:
  int n_ = 0, k_ = 0, parity_words_ = 0;
  std::vector<std::int32_t> parity_cols_;   // original column of parity bit i (= pivot i)
  std::vector<std::int32_t> message_cols_;  // original column of message bit j
  std::vector<std::vector<std::uint64_t>> pgen_;  // per message bit: parity column, bit-packed
};

}  // namespace ldpcosd
