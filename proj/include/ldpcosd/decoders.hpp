#pragma once
// Flooding-schedule iterative decoders over a Tanner graph: belief propagation
// in the LLR and probability domains, plus normalized and offset min-sum.
// LLR orientation: positive favors bit value 1.  Each decoder also maintains
// the exponentially weighted accumulation of its per-iteration soft outputs,
// which downstream reprocessing uses as a reliability metric.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "ldpcosd/gf2.hpp"

namespace ldpcosd {

inline constexpr double kLlrSaturation = 50.0;
inline constexpr double kProbFloor = 1e-12;
// Message clamp used by the bp-llr decode loop: the exact LLR image of the
// probability-domain floor, so both BP domains saturate at the same point and
// keep producing the same tentative hard-decision sequences.
inline const double kLlrMessageClamp = std::log((1.0 - kProbFloor) / kProbFloor);

enum class DecoderVariant { BpLlr, BpProb, MinsumNormalized, MinsumOffset };

struct DecoderConfig {
  DecoderVariant variant = DecoderVariant::BpLlr;
  int max_iterations = 20;
  double alpha = 1.0;                 // accumulation memory factor
  double normalization_factor = 0.8;  // normalized min-sum
  double offset = 0.15;               // offset min-sum

  void validate() const {
    detail::require(max_iterations >= 1, "decoder config: max_iterations must be >= 1");
    detail::require(alpha >= 0.0, "decoder config: alpha must be >= 0");
    detail::require(normalization_factor > 0.0 && normalization_factor <= 1.0,
                    "decoder config: normalization factor must be in (0, 1]");
    detail::require(offset >= 0.0, "decoder config: offset must be >= 0");
  }
};

struct SoftInput {
  std::vector<double> received;  // channel outputs y
  double noise_variance = 1.0;   // sigma^2; unused by min-sum variants
};

struct DecodeOutcome {
  bool converged = false;
  int iterations_used = 0;
  BitVec hard_decision;               // from the accumulated metric
  std::vector<double> accumulated;    // r (bp-llr), q (bp-prob) or u (min-sum)
  std::vector<double> reliability;    // |r|, |q - T/2| or |u|
  BitVec exit_hard_decision;          // tentative decision at the exit iteration
  std::vector<std::vector<double>> per_iteration_outputs;  // filled when tracing
};

inline std::vector<double> initial_llr(const std::vector<double>& y, double sigma2) {
  detail::require(sigma2 > 0.0, "initial_llr: noise variance must be positive");
  std::vector<double> l(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) l[i] = 2.0 * y[i] / sigma2;
  return l;
}

// 2 atanh(prod tanh(m/2)), saturated at +-saturation.  An empty incoming set
// (degree-1 check) saturates positive.
inline double check_update_bp(std::span<const double> incoming, double saturation = kLlrSaturation) {
  double prod = 1.0;
  for (double m : incoming) prod *= std::tanh(0.5 * m);
  if (std::abs(prod) >= 1.0) return std::copysign(saturation, prod);
  double out = 2.0 * std::atanh(prod);
  if (out > saturation) return saturation;
  if (out < -saturation) return -saturation;
  return out;
}

enum class MinsumMode { Normalized, Offset };

// Sign-product / min-magnitude check update.  param is the scaling factor in
// normalized mode and the subtractive offset in offset mode.
inline double check_update_minsum(std::span<const double> incoming, MinsumMode mode, double param) {
  if (incoming.empty()) return kLlrSaturation;
  double mag = std::abs(incoming[0]);
  bool neg = false;
  for (double m : incoming) {
    mag = std::min(mag, std::abs(m));
    if (m < 0.0) neg = !neg;
  }
  mag = mode == MinsumMode::Normalized ? param * mag : std::max(mag - param, 0.0);
  return neg ? -mag : mag;
}

inline BitVec hard_decision_from(const std::vector<double>& metric) {
  BitVec hd(metric.size());
  for (std::size_t i = 0; i < metric.size(); ++i) hd[i] = metric[i] > 0.0 ? 1 : 0;
  return hd;
}

namespace detail {

inline void check_trace(const std::vector<std::vector<double>>& trace) {
  require(!trace.empty(), "accumulate: empty trace");
  for (const auto& t : trace) require(t.size() == trace[0].size(), "accumulate: ragged trace");
}

// acc = sum_k alpha^(e-k) trace[k], e = last index, evaluated by Horner so
// that alpha = 0 degenerates to the final entry (0^0 = 1).
inline std::vector<double> accumulate_signed(const std::vector<std::vector<double>>& trace, double alpha) {
  check_trace(trace);
  require(alpha >= 0.0, "accumulate: alpha must be >= 0");
  std::vector<double> acc(trace[0]);
  for (std::size_t k = 1; k < trace.size(); ++k)
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] * alpha + trace[k][i];
  return acc;
}

}  // namespace detail

inline std::vector<double> accumulate_llr(const std::vector<std::vector<double>>& trace, double alpha) {
  return detail::accumulate_signed(trace, alpha);
}

inline std::vector<double> accumulate_minsum(const std::vector<std::vector<double>>& trace, double alpha) {
  return detail::accumulate_signed(trace, alpha);
}

struct ProbAccumulation {
  std::vector<double> metric;       // q
  BitVec hard_decision;
  std::vector<double> reliability;  // |q - T/2|
  double total_weight = 0.0;        // T = sum_k alpha^(e-k)
};

// q_i = S_i when the initial decision is 1, T - S_i otherwise, with
// S_i = sum_k alpha^(e-k) P_i^(k).  The initial decision is flipped when
// q_i < T/2; reliability is |q_i - T/2|.
inline ProbAccumulation accumulate_prob(const std::vector<std::vector<double>>& trace, double alpha,
                                        const BitVec& initial_hd) {
  detail::check_trace(trace);
  detail::require(alpha >= 0.0, "accumulate: alpha must be >= 0");
  detail::require(initial_hd.size() == trace[0].size(), "accumulate: initial decision length mismatch");
  for (const auto& t : trace)
    for (double p : t) detail::require(p >= 0.0 && p <= 1.0, "accumulate: probability outside [0, 1]");

  std::vector<double> s(trace[0]);
  double tw = 1.0;
  for (std::size_t k = 1; k < trace.size(); ++k) {
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = s[i] * alpha + trace[k][i];
    tw = tw * alpha + 1.0;
  }
  ProbAccumulation out;
  out.total_weight = tw;
  out.metric.resize(s.size());
  out.hard_decision.resize(s.size());
  out.reliability.resize(s.size());
  const double half = 0.5 * tw;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double q = initial_hd[i] ? s[i] : tw - s[i];
    out.metric[i] = q;
    out.hard_decision[i] = q < half ? static_cast<Bit>(1 - initial_hd[i]) : initial_hd[i];
    out.reliability[i] = std::abs(q - half);
  }
  return out;
}

// One decoder instance per thread; decode() reuses internal buffers.
class IterativeDecoder {
 public:
  IterativeDecoder(const BinaryMatrix& h, DecoderConfig cfg) : h_(&h), cfg_(cfg) {
    cfg_.validate();
    const int m = h.rows(), n = h.cols();
    row_begin_.resize(static_cast<std::size_t>(m) + 1, 0);
    for (int r = 0; r < m; ++r)
      row_begin_[static_cast<std::size_t>(r) + 1] =
          row_begin_[static_cast<std::size_t>(r)] + static_cast<std::int32_t>(h.row(r).size());
    const std::int32_t edges = row_begin_[static_cast<std::size_t>(m)];
    edge_var_.resize(static_cast<std::size_t>(edges));
    var_edges_.resize(static_cast<std::size_t>(n));
    for (int r = 0; r < m; ++r) {
      std::int32_t e = row_begin_[static_cast<std::size_t>(r)];
      for (std::int32_t c : h.row(r)) {
        edge_var_[static_cast<std::size_t>(e)] = c;
        var_edges_[static_cast<std::size_t>(c)].push_back(e);
        ++e;
      }
    }
    vtc_.resize(static_cast<std::size_t>(edges));
    ctv_.resize(static_cast<std::size_t>(edges));
    channel_.resize(static_cast<std::size_t>(n));
    channel_b_.resize(static_cast<std::size_t>(n));
    posterior_.resize(static_cast<std::size_t>(n));
    acc_.resize(static_cast<std::size_t>(n));
    hd_.resize(static_cast<std::size_t>(n));
    const std::size_t dmax = static_cast<std::size_t>(std::max(h.max_row_degree(), h.max_col_degree()));
    buf_a_.resize(dmax + 1);
    buf_b_.resize(dmax + 1);
    buf_t_.resize(dmax + 1);
  }

  const DecoderConfig& config() const { return cfg_; }

  DecodeOutcome decode(const SoftInput& in, bool keep_trace = false) {
    const int n = h_->cols();
    detail::require(static_cast<int>(in.received.size()) == n, "decode: received vector length mismatch");
    const bool prob = cfg_.variant == DecoderVariant::BpProb;
    const bool llr = cfg_.variant == DecoderVariant::BpLlr;
    if (prob || llr)
      detail::require(in.noise_variance > 0.0, "decode: noise variance must be positive for BP variants");

    // Channel values: L^(0) = 2y/sigma^2, P^(0) = sigmoid(2y/sigma^2), U^(0) = y.
    for (int i = 0; i < n; ++i) {
      const double y = in.received[static_cast<std::size_t>(i)];
      double v;
      if (llr) {
        v = clamp_llr(2.0 * y / in.noise_variance);
      } else if (prob) {
        v = clamp_prob(1.0 / (1.0 + std::exp(-2.0 * y / in.noise_variance)));
        channel_b_[static_cast<std::size_t>(i)] = 1.0 - v;
      } else {
        v = y;
      }
      channel_[static_cast<std::size_t>(i)] = v;
      posterior_[static_cast<std::size_t>(i)] = v;
      acc_[static_cast<std::size_t>(i)] = v;
    }
    for (std::size_t e = 0; e < vtc_.size(); ++e) vtc_[e] = channel_[static_cast<std::size_t>(edge_var_[e])];

    DecodeOutcome out;
    if (keep_trace) out.per_iteration_outputs.push_back(posterior_);
    tentative_decision();
    double tweight = 1.0;
    int exit_iter = 0;
    bool converged = syndrome_clear();

    for (int k = 1; !converged && k <= cfg_.max_iterations; ++k) {
      switch (cfg_.variant) {
        case DecoderVariant::BpLlr:
          check_pass_bp();
          var_pass_signed();
          break;
        case DecoderVariant::BpProb:
          check_pass_prob();
          var_pass_prob();
          break;
        default:
          check_pass_minsum();
          var_pass_signed();
          break;
      }
      for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] = acc_[i] * cfg_.alpha + posterior_[i];
      tweight = tweight * cfg_.alpha + 1.0;
      if (keep_trace) out.per_iteration_outputs.push_back(posterior_);
      tentative_decision();
      exit_iter = k;
      converged = syndrome_clear();
    }

    out.converged = converged;
    out.iterations_used = exit_iter;
    out.exit_hard_decision = hd_;
    if (prob) {
      out.accumulated.resize(static_cast<std::size_t>(n));
      out.reliability.resize(static_cast<std::size_t>(n));
      out.hard_decision.resize(static_cast<std::size_t>(n));
      const double half = 0.5 * tweight;
      for (int i = 0; i < n; ++i) {
        const Bit init = in.received[static_cast<std::size_t>(i)] > 0.0 ? 1 : 0;
        const double q = init ? acc_[static_cast<std::size_t>(i)] : tweight - acc_[static_cast<std::size_t>(i)];
        out.accumulated[static_cast<std::size_t>(i)] = q;
        out.hard_decision[static_cast<std::size_t>(i)] = q < half ? static_cast<Bit>(1 - init) : init;
        out.reliability[static_cast<std::size_t>(i)] = std::abs(q - half);
      }
    } else {
      out.accumulated = acc_;
      out.hard_decision = hard_decision_from(acc_);
      out.reliability.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) out.reliability[static_cast<std::size_t>(i)] = std::abs(acc_[static_cast<std::size_t>(i)]);
    }
    return out;
  }

 private:
  static double clamp_prob(double p) {
    if (p < kProbFloor) return kProbFloor;
    if (p > 1.0 - kProbFloor) return 1.0 - kProbFloor;
    return p;
  }

  static double clamp_llr(double l) {
    if (l > kLlrMessageClamp) return kLlrMessageClamp;
    if (l < -kLlrMessageClamp) return -kLlrMessageClamp;
    return l;
  }

  static double saturate_bp(double prod) {
    if (std::abs(prod) >= 1.0) return std::copysign(kLlrSaturation, prod);
    double out = 2.0 * std::atanh(prod);
    if (out > kLlrSaturation) return kLlrSaturation;
    if (out < -kLlrSaturation) return -kLlrSaturation;
    return out;
  }

  void check_pass_bp() {
    const int m = h_->rows();
    for (int r = 0; r < m; ++r) {
      const std::int32_t e0 = row_begin_[static_cast<std::size_t>(r)];
      const int d = row_begin_[static_cast<std::size_t>(r) + 1] - e0;
      for (int t = 0; t < d; ++t) buf_t_[static_cast<std::size_t>(t)] = std::tanh(0.5 * vtc_[static_cast<std::size_t>(e0 + t)]);
      buf_a_[0] = 1.0;
      for (int t = 0; t < d; ++t) buf_a_[static_cast<std::size_t>(t) + 1] = buf_a_[static_cast<std::size_t>(t)] * buf_t_[static_cast<std::size_t>(t)];
      double suf = 1.0;
      for (int t = d - 1; t >= 0; --t) {
        ctv_[static_cast<std::size_t>(e0 + t)] = clamp_llr(saturate_bp(buf_a_[static_cast<std::size_t>(t)] * suf));
        suf *= buf_t_[static_cast<std::size_t>(t)];
      }
    }
  }

  void check_pass_prob() {
    const int m = h_->rows();
    for (int r = 0; r < m; ++r) {
      const std::int32_t e0 = row_begin_[static_cast<std::size_t>(r)];
      const int d = row_begin_[static_cast<std::size_t>(r) + 1] - e0;
      for (int t = 0; t < d; ++t) buf_t_[static_cast<std::size_t>(t)] = 2.0 * vtc_[static_cast<std::size_t>(e0 + t)] - 1.0;
      buf_a_[0] = 1.0;
      for (int t = 0; t < d; ++t) buf_a_[static_cast<std::size_t>(t) + 1] = buf_a_[static_cast<std::size_t>(t)] * buf_t_[static_cast<std::size_t>(t)];
      double suf = 1.0;
      for (int t = d - 1; t >= 0; --t) {
        ctv_[static_cast<std::size_t>(e0 + t)] = clamp_prob(0.5 * (1.0 + buf_a_[static_cast<std::size_t>(t)] * suf));
        suf *= buf_t_[static_cast<std::size_t>(t)];
      }
    }
  }

  void check_pass_minsum() {
    const bool normalized = cfg_.variant == DecoderVariant::MinsumNormalized;
    const double param = normalized ? cfg_.normalization_factor : cfg_.offset;
    const int m = h_->rows();
    for (int r = 0; r < m; ++r) {
      const std::int32_t e0 = row_begin_[static_cast<std::size_t>(r)];
      const int d = row_begin_[static_cast<std::size_t>(r) + 1] - e0;
      if (d == 1) {
        ctv_[static_cast<std::size_t>(e0)] = kLlrSaturation;
        continue;
      }
      double min1 = std::numeric_limits<double>::infinity();
      double min2 = min1;
      int argmin = -1;
      bool total_neg = false;
      for (int t = 0; t < d; ++t) {
        const double v = vtc_[static_cast<std::size_t>(e0 + t)];
        if (v < 0.0) total_neg = !total_neg;
        const double a = std::abs(v);
        if (a < min1) {
          min2 = min1;
          min1 = a;
          argmin = t;
        } else if (a < min2) {
          min2 = a;
        }
      }
      for (int t = 0; t < d; ++t) {
        const double v = vtc_[static_cast<std::size_t>(e0 + t)];
        double mag = t == argmin ? min2 : min1;
        mag = normalized ? param * mag : std::max(mag - param, 0.0);
        const bool neg = total_neg != (v < 0.0);
        ctv_[static_cast<std::size_t>(e0 + t)] = neg ? -mag : mag;
      }
    }
  }

  void var_pass_signed() {
    // bp-llr mirrors the clamps of var_pass_prob; min-sum stays unclamped so
    // its hard decisions remain invariant under positive scaling of y.
    const bool clamp = cfg_.variant == DecoderVariant::BpLlr;
    const int n = h_->cols();
    for (int v = 0; v < n; ++v) {
      const auto& edges = var_edges_[static_cast<std::size_t>(v)];
      const int d = static_cast<int>(edges.size());
      buf_a_[0] = channel_[static_cast<std::size_t>(v)];
      for (int t = 0; t < d; ++t)
        buf_a_[static_cast<std::size_t>(t) + 1] = buf_a_[static_cast<std::size_t>(t)] + ctv_[static_cast<std::size_t>(edges[static_cast<std::size_t>(t)])];
      double suf = 0.0;
      for (int t = d - 1; t >= 0; --t) {
        const std::size_t e = static_cast<std::size_t>(edges[static_cast<std::size_t>(t)]);
        const double msg = buf_a_[static_cast<std::size_t>(t)] + suf;
        vtc_[e] = clamp ? clamp_llr(msg) : msg;
        suf += ctv_[e];
      }
      const double post = buf_a_[static_cast<std::size_t>(d)];
      posterior_[static_cast<std::size_t>(v)] = clamp ? clamp_llr(post) : post;
    }
  }

  void var_pass_prob() {
    const int n = h_->cols();
    for (int v = 0; v < n; ++v) {
      const auto& edges = var_edges_[static_cast<std::size_t>(v)];
      const int d = static_cast<int>(edges.size());
      buf_a_[0] = channel_[static_cast<std::size_t>(v)];
      buf_b_[0] = channel_b_[static_cast<std::size_t>(v)];
      for (int t = 0; t < d; ++t) {
        const double r = ctv_[static_cast<std::size_t>(edges[static_cast<std::size_t>(t)])];
        buf_a_[static_cast<std::size_t>(t) + 1] = buf_a_[static_cast<std::size_t>(t)] * r;
        buf_b_[static_cast<std::size_t>(t) + 1] = buf_b_[static_cast<std::size_t>(t)] * (1.0 - r);
      }
      double sufa = 1.0, sufb = 1.0;
      for (int t = d - 1; t >= 0; --t) {
        const std::size_t e = static_cast<std::size_t>(edges[static_cast<std::size_t>(t)]);
        const double a = buf_a_[static_cast<std::size_t>(t)] * sufa;
        const double b = buf_b_[static_cast<std::size_t>(t)] * sufb;
        vtc_[e] = clamp_prob(a / (a + b));
        sufa *= ctv_[e];
        sufb *= 1.0 - ctv_[e];
      }
      const double a = buf_a_[static_cast<std::size_t>(d)];
      const double b = buf_b_[static_cast<std::size_t>(d)];
      posterior_[static_cast<std::size_t>(v)] = clamp_prob(a / (a + b));
    }
  }

  void tentative_decision() {
    const double thr = cfg_.variant == DecoderVariant::BpProb ? 0.5 : 0.0;
    for (std::size_t i = 0; i < posterior_.size(); ++i) hd_[i] = posterior_[i] > thr ? 1 : 0;
  }

  bool syndrome_clear() const {
    const int m = h_->rows();
    for (int r = 0; r < m; ++r) {
      Bit acc = 0;
      for (std::int32_t c : h_->row(r)) acc ^= hd_[static_cast<std::size_t>(c)];
      if (acc) return false;
    }
    return true;
  }

  const BinaryMatrix* h_;
  DecoderConfig cfg_;
  std::vector<std::int32_t> row_begin_;   // CSR over check rows
  std::vector<std::int32_t> edge_var_;    // edge -> variable
  std::vector<std::vector<std::int32_t>> var_edges_;
  std::vector<double> vtc_, ctv_;         // variable-to-check / check-to-variable
  std::vector<double> channel_, channel_b_, posterior_, acc_;
  std::vector<double> buf_a_, buf_b_, buf_t_;
  BitVec hd_;
};

}  // namespace ldpcosd
