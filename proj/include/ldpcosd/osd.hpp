#pragma once
// Order-p ordered-statistic decoding in syndrome form: reliability ordering
// (lambda1), least-reliable-basis construction via column-pivoted elimination
// (lambda2), candidate error-pattern enumeration over the information set, and
// the two-substep W_s / discrepancy selection.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ldpcosd/gf2.hpp"

namespace ldpcosd {

struct ReliabilityOrdering {
  Permutation lambda1;               // sorted position j -> original bit index
  std::vector<std::int32_t> weights; // weights[i] = 1-based rank of original bit i
};

inline ReliabilityOrdering rank_by_reliability(const std::vector<double>& reliability) {
  const int n = static_cast<int>(reliability.size());
  std::vector<std::int32_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return reliability[static_cast<std::size_t>(a)] < reliability[static_cast<std::size_t>(b)];
  });
  ReliabilityOrdering out;
  out.weights.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out.weights[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] = j + 1;
  out.lambda1 = Permutation(std::move(order));
  return out;
}

struct OsdConfig {
  int order = 0;
  std::optional<long long> beta = 1;  // nullopt = keep all candidates ("all")

  void validate() const {
    detail::require(order >= 0, "osd config: order must be >= 0");
    detail::require(!beta || *beta >= 1, "osd config: beta must be >= 1");
  }
};

struct LrbStructure {
  EliminationResult reduced;            // elimination of H under lambda1
  BitVec transformed_syndrome;          // length rank
  std::vector<std::int32_t> lrb_indices;   // original numbering, size rank
  std::vector<std::int32_t> info_indices;  // original numbering, size N - rank
  std::vector<std::int32_t> final_to_orig; // final position -> original bit index

  int rank() const { return reduced.rank; }
  int length() const { return reduced.reduced.cols(); }
  const Permutation& lambda2() const { return reduced.lambda2; }
};

inline LrbStructure build_lrb(const BinaryMatrix& h, const ReliabilityOrdering& ordering,
                              const BitVec& hard_decision) {
  detail::require(ordering.lambda1.size() == h.cols(), "build_lrb: ordering length mismatch");
  LrbStructure out;
  out.reduced = eliminate(h, ordering.lambda1);
  out.transformed_syndrome = apply_row_transform(out.reduced, syndrome(h, hard_decision));
  const int n = h.cols();
  const int r = out.reduced.rank;
  out.final_to_orig.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    out.final_to_orig[static_cast<std::size_t>(j)] = ordering.lambda1[out.reduced.lambda2[j]];
  out.lrb_indices.assign(out.final_to_orig.begin(), out.final_to_orig.begin() + r);
  out.info_indices.assign(out.final_to_orig.begin() + r, out.final_to_orig.end());
  return out;
}

// XOR of the reduced-matrix columns at info_support (final numbering), XORed
// with the transformed syndrome: the dependent part e_11 forced by Eq. (5).
inline BitVec dependent_part(const LrbStructure& lrb, const std::vector<std::int32_t>& info_support) {
  const int r = lrb.rank();
  const int n = lrb.length();
  BitVec out(lrb.transformed_syndrome);
  for (std::int32_t j : info_support) {
    detail::require(j >= r && j < n, "dependent_part: position outside the information set");
    for (int i = 0; i < r; ++i)
      if (lrb.reduced.reduced.get(i, j)) out[static_cast<std::size_t>(i)] ^= 1;
  }
  return out;
}

inline double discrepancy(const std::vector<double>& y, const BitVec& error_pattern) {
  detail::require(y.size() == error_pattern.size(), "discrepancy: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (error_pattern[i]) d += std::abs(y[i]);
  return d;
}

struct CandidatePattern {
  std::vector<std::int32_t> info_support;     // final-numbering positions, ascending
  std::vector<std::uint64_t> dependent_words; // e_11, bit-packed, rank bits
  long long weight_metric = 0;                // W_s over the full support
  double discrepancy = std::numeric_limits<double>::quiet_NaN();  // survivors only
  std::uint64_t enum_index = 0;

  BitVec dependent_part(int rank) const {
    BitVec out(static_cast<std::size_t>(rank), 0);
    for (int i = 0; i < rank; ++i)
      out[static_cast<std::size_t>(i)] =
          static_cast<Bit>((dependent_words[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1u);
    return out;
  }
};

inline std::uint64_t candidate_count(int kinfo, int order) {
  std::uint64_t total = 0;
  std::uint64_t c = 1;  // C(kinfo, l)
  for (int l = 0; l <= order; ++l) {
    total += c;
    if (c > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(kinfo + 1))
      throw std::overflow_error("candidate_count: combination count overflow");
    c = c * static_cast<std::uint64_t>(kinfo - l) / static_cast<std::uint64_t>(l + 1);
  }
  return total;
}

// Streams candidates phase by phase (l = 0..p); within a phase, supports are
// in lexicographic order over the weight-sorted info positions.  Advancing the
// innermost slot costs one column XOR; a carry rebuilds the prefix stack from
// the changed slot.
class CandidateEnumerator {
 public:
  CandidateEnumerator(const LrbStructure& lrb, const ReliabilityOrdering& ordering, const OsdConfig& config)
      : lrb_(&lrb), rank_(lrb.rank()), kinfo_(lrb.length() - lrb.rank()),
        words_((lrb.rank() + 63) / 64) {
    config.validate();
    detail::require(ordering.lambda1.size() == lrb.length(), "enumerate: ordering length mismatch");
    order_ = config.order;
    if (order_ > kinfo_) {
      order_ = kinfo_;
      order_clamped_ = true;
    }

    ts_.assign(static_cast<std::size_t>(words_), 0);
    for (int i = 0; i < rank_; ++i)
      if (lrb.transformed_syndrome[static_cast<std::size_t>(i)])
        ts_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);

    cols_.assign(static_cast<std::size_t>(kinfo_) * static_cast<std::size_t>(words_), 0);
    const BitMatrix& red = lrb.reduced.reduced;
    for (int i = 0; i < rank_; ++i) {
      const std::uint64_t mask = std::uint64_t{1} << (i & 63);
      const std::size_t w = static_cast<std::size_t>(i >> 6);
      for (int c = 0; c < kinfo_; ++c)
        if (red.get(i, rank_ + c)) cols_[static_cast<std::size_t>(c) * words_ + w] |= mask;
    }

    dep_weights_.resize(static_cast<std::size_t>(rank_));
    for (int i = 0; i < rank_; ++i)
      dep_weights_[static_cast<std::size_t>(i)] =
          ordering.weights[static_cast<std::size_t>(lrb.final_to_orig[static_cast<std::size_t>(i)])];
    info_weights_.resize(static_cast<std::size_t>(kinfo_));
    for (int c = 0; c < kinfo_; ++c)
      info_weights_[static_cast<std::size_t>(c)] =
          ordering.weights[static_cast<std::size_t>(lrb.final_to_orig[static_cast<std::size_t>(rank_ + c)])];

    prefix_.assign(static_cast<std::size_t>(order_ + 1) * words_, 0);
    wprefix_.assign(static_cast<std::size_t>(order_ + 1), 0);
  }

  bool order_clamped() const { return order_clamped_; }
  int effective_order() const { return order_; }
  std::uint64_t emitted() const { return count_; }
  std::uint64_t total_count() const { return candidate_count(kinfo_, order_); }

  bool next(CandidatePattern& out) {
    if (done_) return false;
    if (first_) {
      first_ = false;
      load_phase(0);
    } else if (!advance()) {
      if (phase_ == order_) {
        done_ = true;
        return false;
      }
      load_phase(phase_ + 1);
    }
    emit(out);
    return true;
  }

 private:
  const std::uint64_t* col(int c) const { return cols_.data() + static_cast<std::size_t>(c) * words_; }
  std::uint64_t* prefix(int t) { return prefix_.data() + static_cast<std::size_t>(t) * words_; }

  void load_phase(int l) {
    phase_ = l;
    comb_.resize(static_cast<std::size_t>(l));
    for (int t = 0; t < l; ++t) comb_[static_cast<std::size_t>(t)] = t;
    for (int w = 0; w < words_; ++w) prefix_[static_cast<std::size_t>(w)] = ts_[static_cast<std::size_t>(w)];
    for (int t = 0; t < l; ++t) extend(t);
  }

  // prefix(t+1) = prefix(t) ^ column(comb_[t]); wprefix likewise.
  void extend(int t) {
    const std::uint64_t* c = col(comb_[static_cast<std::size_t>(t)]);
    const std::uint64_t* src = prefix(t);
    std::uint64_t* dst = prefix(t + 1);
    for (int w = 0; w < words_; ++w) dst[w] = src[w] ^ c[w];
    wprefix_[static_cast<std::size_t>(t) + 1] =
        wprefix_[static_cast<std::size_t>(t)] + info_weights_[static_cast<std::size_t>(comb_[static_cast<std::size_t>(t)])];
  }

  bool advance() {
    const int l = phase_;
    int t = l - 1;
    while (t >= 0 && comb_[static_cast<std::size_t>(t)] == kinfo_ - l + t) --t;
    if (t < 0) return false;
    ++comb_[static_cast<std::size_t>(t)];
    extend(t);
    for (int s = t + 1; s < l; ++s) {
      comb_[static_cast<std::size_t>(s)] = comb_[static_cast<std::size_t>(s) - 1] + 1;
      extend(s);
    }
    return true;
  }

  void emit(CandidatePattern& out) {
    const int l = phase_;
    out.info_support.resize(static_cast<std::size_t>(l));
    for (int t = 0; t < l; ++t) out.info_support[static_cast<std::size_t>(t)] = rank_ + comb_[static_cast<std::size_t>(t)];
    const std::uint64_t* dep = prefix(l);
    out.dependent_words.assign(dep, dep + words_);
    long long ws = wprefix_[static_cast<std::size_t>(l)];
    for (int w = 0; w < words_; ++w) {
      std::uint64_t bits = dep[w];
      while (bits) {
        const int i = (w << 6) + std::countr_zero(bits);
        ws += dep_weights_[static_cast<std::size_t>(i)];
        bits &= bits - 1;
      }
    }
    out.weight_metric = ws;
    out.discrepancy = std::numeric_limits<double>::quiet_NaN();
    out.enum_index = count_++;
  }

  const LrbStructure* lrb_;
  int rank_, kinfo_, words_;
  int order_ = 0;
  bool order_clamped_ = false;
  std::vector<std::uint64_t> ts_, cols_, prefix_;
  std::vector<std::int32_t> dep_weights_, info_weights_;
  std::vector<std::int32_t> comb_;
  std::vector<long long> wprefix_;
  int phase_ = 0;
  bool first_ = true, done_ = false;
  std::uint64_t count_ = 0;
};

struct SelectedPattern {
  BitVec error_pattern;  // original numbering
  long long weight_metric = 0;
  double discrepancy = 0.0;
  std::uint64_t enum_index = 0;
};

// Substep (a): keep the beta candidates of smallest W_s (ties by enumeration
// order).  Substep (b): un-permute each survivor and return the one of
// smallest discrepancy, ties again by enumeration order.
inline SelectedPattern select_error_pattern(CandidateEnumerator& candidates, const std::vector<double>& y,
                                            const LrbStructure& lrb, const OsdConfig& config) {
  config.validate();
  detail::require(static_cast<int>(y.size()) == lrb.length(), "select_error_pattern: y length mismatch");

  struct Survivor {
    long long ws;
    std::uint64_t idx;
    std::vector<std::int32_t> info_support;
    std::vector<std::uint64_t> dep;
    bool operator<(const Survivor& o) const {
      return ws != o.ws ? ws < o.ws : idx < o.idx;
    }
  };

  std::vector<Survivor> pool;  // max-heap when beta is bounded
  const bool bounded = config.beta.has_value();
  const std::size_t cap = bounded ? static_cast<std::size_t>(*config.beta) : 0;

  CandidatePattern cand;
  bool any = false;
  while (candidates.next(cand)) {
    any = true;
    Survivor s{cand.weight_metric, cand.enum_index, cand.info_support, cand.dependent_words};
    if (!bounded) {
      pool.push_back(std::move(s));
      continue;
    }
    if (pool.size() < cap) {
      pool.push_back(std::move(s));
      std::push_heap(pool.begin(), pool.end());
    } else if (s < pool.front()) {
      std::pop_heap(pool.begin(), pool.end());
      pool.back() = std::move(s);
      std::push_heap(pool.begin(), pool.end());
    }
  }
  detail::require(any, "select_error_pattern: empty candidate stream");

  std::sort(pool.begin(), pool.end(),
            [](const Survivor& a, const Survivor& b) { return a.idx < b.idx; });

  const Survivor* best = nullptr;
  double best_d = 0.0;
  std::vector<std::int32_t> support, best_support;
  for (const Survivor& s : pool) {
    support.clear();
    for (int w = 0; w < static_cast<int>(s.dep.size()); ++w) {
      std::uint64_t bits = s.dep[static_cast<std::size_t>(w)];
      while (bits) {
        const int i = (w << 6) + std::countr_zero(bits);
        support.push_back(lrb.final_to_orig[static_cast<std::size_t>(i)]);
        bits &= bits - 1;
      }
    }
    for (std::int32_t j : s.info_support) support.push_back(lrb.final_to_orig[static_cast<std::size_t>(j)]);
    std::sort(support.begin(), support.end());
    double d = 0.0;
    for (std::int32_t i : support) d += std::abs(y[static_cast<std::size_t>(i)]);
    if (!best || d < best_d) {
      best = &s;
      best_d = d;
      best_support = support;
    }
  }

  SelectedPattern out;
  out.error_pattern.assign(y.size(), 0);
  for (std::int32_t i : best_support) out.error_pattern[static_cast<std::size_t>(i)] = 1;
  out.weight_metric = best->ws;
  out.discrepancy = best_d;
  out.enum_index = best->idx;
  return out;
}

struct OsdDecodeResult {
  BitVec codeword;
  SelectedPattern selected;
  std::uint64_t candidates = 0;
  bool order_clamped = false;
};

inline OsdDecodeResult osd_decode(const BinaryMatrix& h, const std::vector<double>& y, const BitVec& c_hat,
                                  const ReliabilityOrdering& ordering, const OsdConfig& config) {
  detail::require(static_cast<int>(y.size()) == h.cols(), "osd_decode: y length mismatch");
  detail::require(static_cast<int>(c_hat.size()) == h.cols(), "osd_decode: hard decision length mismatch");
  LrbStructure lrb = build_lrb(h, ordering, c_hat);
  CandidateEnumerator en(lrb, ordering, config);
  OsdDecodeResult out;
  out.selected = select_error_pattern(en, y, lrb, config);
  out.candidates = en.emitted();
  out.order_clamped = en.order_clamped();
  out.codeword.resize(c_hat.size());
  for (std::size_t i = 0; i < c_hat.size(); ++i)
    out.codeword[i] = c_hat[i] ^ out.selected.error_pattern[i];
  return out;
}

}  // namespace ldpcosd
