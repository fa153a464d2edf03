#pragma once
// Frame-level Monte-Carlo engine: per-point simulation with the paper's
// stopping rule and deterministic multi-threaded execution.  Frames are
// processed in fixed-size batches; per-frame randomness depends only on
// (seed, frame index), and the stop rule is evaluated on batch boundaries, so
// results are bit-identical for any worker count.

#include <atomic>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ldpcosd/channel.hpp"
#include "ldpcosd/decoders.hpp"
#include "ldpcosd/gf2.hpp"
#include "ldpcosd/osd.hpp"

namespace ldpcosd {

struct StopRule {
  long long min_frame_errors = 100;
  long long max_frames = 10'000'000;

  void validate() const {
    detail::require(min_frame_errors >= 1, "stop rule: min_frame_errors must be >= 1");
    detail::require(max_frames >= 1, "stop rule: max_frames must be >= 1");
  }
};

struct SimStats {
  long long frames = 0;
  long long frame_errors = 0;
  long long bit_errors = 0;
  long long bits = 0;
  long long iteration_sum = 0;
  long long osd_invocations = 0;
  long long osd_rescues = 0;

  double fer() const { return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0; }
  double ber() const { return bits ? static_cast<double>(bit_errors) / static_cast<double>(bits) : 0.0; }
  double avg_iterations() const {
    return frames ? static_cast<double>(iteration_sum) / static_cast<double>(frames) : 0.0;
  }

  void merge(const SimStats& o) {
    frames += o.frames;
    frame_errors += o.frame_errors;
    bit_errors += o.bit_errors;
    bits += o.bits;
    iteration_sum += o.iteration_sum;
    osd_invocations += o.osd_invocations;
    osd_rescues += o.osd_rescues;
  }

  bool operator==(const SimStats&) const = default;
};

namespace detail {

struct FrameWorker {
  const BinaryMatrix* h;
  IterativeDecoder decoder;
  const std::optional<OsdConfig>* osd;
  const SystematicEncoder* encoder;  // null in all-zero mode
  double sigma2;
  std::uint64_t seed;

  FrameWorker(const BinaryMatrix& hh, const DecoderConfig& dc, const std::optional<OsdConfig>& oc,
              const SystematicEncoder* enc, double s2, std::uint64_t sd)
      : h(&hh), decoder(hh, dc), osd(&oc), encoder(enc), sigma2(s2), seed(sd) {}

  void run_frame(std::uint64_t frame_index, SimStats& stats) {
    FrameRng rng(seed, frame_index);
    const int n = h->cols();

    BitVec codeword;
    if (encoder) {
      BitVec msg(static_cast<std::size_t>(encoder->message_length()));
      for (auto& b : msg) b = rng.bit();
      codeword = encoder->encode(msg);
    } else {
      codeword.assign(static_cast<std::size_t>(n), 0);
    }

    SoftInput in;
    in.received = transmit(modulate(codeword), sigma2, rng);
    in.noise_variance = sigma2;
    DecodeOutcome outcome = decoder.decode(in);

    const BitVec* decoded = nullptr;
    BitVec osd_word;
    if (outcome.converged) {
      decoded = &outcome.exit_hard_decision;
    } else if (osd->has_value()) {
      ++stats.osd_invocations;
      ReliabilityOrdering ordering = rank_by_reliability(outcome.reliability);
      osd_word = osd_decode(*h, in.received, outcome.hard_decision, ordering, **osd).codeword;
      decoded = &osd_word;
      if (osd_word == codeword) ++stats.osd_rescues;
    } else {
      decoded = &outcome.hard_decision;
    }

    long long diff = 0;
    for (std::size_t i = 0; i < codeword.size(); ++i)
      if ((*decoded)[i] != codeword[i]) ++diff;
    if (diff) {
      ++stats.frame_errors;
      stats.bit_errors += diff;
    }
    ++stats.frames;
    stats.bits += n;
    stats.iteration_sum += outcome.iterations_used;
  }
};

}  // namespace detail

inline SimStats run_point(const BinaryMatrix& h, const DecoderConfig& decoder_config,
                          const std::optional<OsdConfig>& osd_config, const ChannelConfig& channel,
                          const StopRule& stop, int threads = 1) {
  decoder_config.validate();
  if (osd_config) osd_config->validate();
  stop.validate();
  detail::require(threads >= 1, "run_point: thread count must be >= 1");
  const double sigma2 = sigma2_from_ebn0(channel.ebn0_db, channel.code_rate);

  std::optional<SystematicEncoder> encoder;
  if (channel.source_mode == SourceMode::RandomCodeword) encoder.emplace(h);

  constexpr std::uint64_t kBatch = 1024;
  SimStats total;
  std::uint64_t next_frame = 0;

  std::vector<detail::FrameWorker> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t)
    workers.emplace_back(h, decoder_config, osd_config, encoder ? &*encoder : nullptr, sigma2, channel.seed);

  while (total.frame_errors < stop.min_frame_errors && total.frames < stop.max_frames) {
    const std::uint64_t remaining = static_cast<std::uint64_t>(stop.max_frames - total.frames);
    const std::uint64_t batch = std::min(kBatch, remaining);
    const std::uint64_t batch_end = next_frame + batch;

    if (threads == 1) {
      for (std::uint64_t f = next_frame; f < batch_end; ++f) workers[0].run_frame(f, total);
    } else {
      std::atomic<std::uint64_t> cursor{next_frame};
      std::vector<SimStats> partial(static_cast<std::size_t>(threads));
      std::vector<std::thread> pool;
      pool.reserve(static_cast<std::size_t>(threads));
      for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
          SimStats& local = partial[static_cast<std::size_t>(t)];
          for (;;) {
            const std::uint64_t f = cursor.fetch_add(1, std::memory_order_relaxed);
            if (f >= batch_end) break;
            workers[static_cast<std::size_t>(t)].run_frame(f, local);
          }
        });
      }
      for (auto& th : pool) th.join();
      for (const auto& p : partial) total.merge(p);
    }
    next_frame = batch_end;
  }
  return total;
}

inline std::vector<SimStats> run_sweep(const BinaryMatrix& h, const DecoderConfig& decoder_config,
                                       const std::optional<OsdConfig>& osd_config, const ChannelConfig& base,
                                       const std::vector<double>& ebn0_grid, const StopRule& stop,
                                       int threads = 1) {
  std::vector<SimStats> out;
  out.reserve(ebn0_grid.size());
  for (double ebn0 : ebn0_grid) {
    ChannelConfig point = base;
    point.ebn0_db = ebn0;
    out.push_back(run_point(h, decoder_config, osd_config, point, stop, threads));
  }
  return out;
}

}  // namespace ldpcosd
