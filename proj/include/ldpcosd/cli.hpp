#pragma once
// Campaign orchestration and result serialization for the command-line tool.
// Kept apart from main() so formatting and the subcommand logic are testable.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ldpcosd/alist.hpp"
#include "ldpcosd/decoders.hpp"
#include "ldpcosd/gf2.hpp"
#include "ldpcosd/montecarlo.hpp"
#include "ldpcosd/osd.hpp"

namespace ldpcosd {

enum class OutputFormat { Csv, Json };

struct Campaign {
  std::string code_path;
  DecoderConfig decoder;
  std::optional<OsdConfig> osd;
  double snr_start = 1.0;
  double snr_stop = 3.0;
  double snr_step = 0.5;
  StopRule stop;
  std::uint64_t seed = 1;
  SourceMode source = SourceMode::AllZero;
  std::string out_path = "results.csv";
  OutputFormat format = OutputFormat::Csv;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    detail::require(!code_path.empty(), "campaign: code path is required");
    detail::require(snr_step > 0.0, "campaign: snr step must be > 0");
    detail::require(snr_stop >= snr_start - 1e-12, "campaign: empty snr grid");
    decoder.validate();
    if (osd) osd->validate();
    stop.validate();
    detail::require(threads >= 0, "campaign: threads must be >= 0");
  }
};

inline std::vector<double> make_grid(double start, double stop, double step) {
  detail::require(step > 0.0, "grid: step must be > 0");
  detail::require(stop >= start - 1e-12, "grid: empty (stop < start)");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-9) break;
    g.push_back(v);
  }
  return g;
}

struct PointRow {
  double ebn0_db = 0.0;
  SimStats stats;
  double wall_seconds = 0.0;
};

inline std::string csv_header() {
  return "ebn0_db,frames,frame_errors,bit_errors,fer,ber,avg_iterations,osd_invocations,osd_rescues,wall_seconds";
}

inline std::string csv_row(const PointRow& r) {
  char buf[320];
  std::snprintf(buf, sizeof(buf), "%.4f,%lld,%lld,%lld,%.6e,%.6e,%.6f,%lld,%lld,%.3f", r.ebn0_db,
                r.stats.frames, r.stats.frame_errors, r.stats.bit_errors, r.stats.fer(), r.stats.ber(),
                r.stats.avg_iterations(), r.stats.osd_invocations, r.stats.osd_rescues, r.wall_seconds);
  return buf;
}

inline std::string format_csv(const std::vector<PointRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

inline std::string format_json(const std::vector<PointRow>& rows) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& r : rows) {
    points.push_back({{"ebn0_db", r.ebn0_db},
                      {"frames", r.stats.frames},
                      {"frame_errors", r.stats.frame_errors},
                      {"bit_errors", r.stats.bit_errors},
                      {"fer", r.stats.fer()},
                      {"ber", r.stats.ber()},
                      {"avg_iterations", r.stats.avg_iterations()},
                      {"osd_invocations", r.stats.osd_invocations},
                      {"osd_rescues", r.stats.osd_rescues},
                      {"wall_seconds", r.wall_seconds}});
  }
  nlohmann::json doc{{"points", points}};
  return doc.dump(2) + "\n";
}

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

inline std::vector<PointRow> run_campaign(const BinaryMatrix& h, const Campaign& c,
                                          std::ostream* progress = nullptr) {
  c.validate();
  const auto grid = make_grid(c.snr_start, c.snr_stop, c.snr_step);
  ChannelConfig base;
  base.code_rate = static_cast<double>(h.cols() - h.rows()) / static_cast<double>(h.cols());
  base.seed = c.seed;
  base.source_mode = c.source;
  const int threads = resolve_threads(c.threads);

  std::vector<PointRow> rows;
  rows.reserve(grid.size());
  for (double ebn0 : grid) {
    ChannelConfig point = base;
    point.ebn0_db = ebn0;
    const auto t0 = std::chrono::steady_clock::now();
    PointRow row;
    row.ebn0_db = ebn0;
    row.stats = run_point(h, c.decoder, c.osd, point, c.stop, threads);
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(row);
    if (progress) {
      *progress << "ebn0 " << ebn0 << " dB: frames=" << row.stats.frames
                << " fer=" << row.stats.fer() << " avg_iters=" << row.stats.avg_iterations() << '\n';
    }
  }
  return rows;
}

inline int cmd_simulate(const Campaign& c, std::ostream& err, std::ostream* progress = nullptr) {
  try {
    BinaryMatrix h = load_alist(c.code_path);
    const auto rows = run_campaign(h, c, progress);
    std::ofstream out(c.out_path);
    if (!out) throw std::runtime_error("cannot write output file: " + c.out_path);
    out << (c.format == OutputFormat::Csv ? format_csv(rows) : format_json(rows));
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

struct DecodeOneReport {
  bool converged = false;
  int iterations = 0;
  bool osd_invoked = false;
  bool order_clamped = false;
  std::uint64_t candidates = 0;
  long long selected_ws = 0;
  double selected_d = 0.0;
  bool syndrome_ok = false;
  BitVec codeword;

  std::string to_text() const {
    std::ostringstream out;
    out << "converged: " << (converged ? "yes" : "no") << '\n';
    out << "iterations: " << iterations << '\n';
    out << "osd: " << (osd_invoked ? "invoked" : "not invoked") << '\n';
    if (osd_invoked) {
      if (order_clamped) out << "warning: osd order clamped to the information-set size\n";
      out << "candidates: " << candidates << '\n';
      out << "selected_ws: " << selected_ws << '\n';
      out << "selected_d: " << selected_d << '\n';
    }
    out << "syndrome_ok: " << (syndrome_ok ? "yes" : "no") << '\n';
    out << "codeword: ";
    for (Bit b : codeword) out << static_cast<int>(b);
    out << '\n';
    return out.str();
  }
};

inline DecodeOneReport run_decode_one(const BinaryMatrix& h, const std::vector<double>& y, double sigma2,
                                      const DecoderConfig& decoder_config,
                                      const std::optional<OsdConfig>& osd_config) {
  detail::require(static_cast<int>(y.size()) == h.cols(), "decode-one: y length mismatch");
  IterativeDecoder dec(h, decoder_config);
  SoftInput in{y, sigma2};
  DecodeOutcome outcome = dec.decode(in);

  DecodeOneReport rep;
  rep.converged = outcome.converged;
  rep.iterations = outcome.iterations_used;
  if (outcome.converged) {
    rep.codeword = outcome.exit_hard_decision;
  } else if (osd_config) {
    rep.osd_invoked = true;
    ReliabilityOrdering ordering = rank_by_reliability(outcome.reliability);
    OsdDecodeResult res = osd_decode(h, y, outcome.hard_decision, ordering, *osd_config);
    rep.order_clamped = res.order_clamped;
    rep.candidates = res.candidates;
    rep.selected_ws = res.selected.weight_metric;
    rep.selected_d = res.selected.discrepancy;
    rep.codeword = res.codeword;
  } else {
    rep.codeword = outcome.hard_decision;
  }
  rep.syndrome_ok = is_zero(syndrome(h, rep.codeword));
  return rep;
}

struct CodeInfoReport {
  int n = 0, m = 0, k = 0, rank = 0;
  std::vector<std::pair<int, int>> col_degree_profile;  // degree -> count
  std::vector<std::pair<int, int>> row_degree_profile;

  std::string to_text() const {
    std::ostringstream out;
    out << "n: " << n << '\n' << "m: " << m << '\n' << "k: " << k << '\n' << "rank: " << rank << '\n';
    if (rank < m) out << "warning: parity-check matrix is rank deficient\n";
    auto dump = [&](const char* label, const std::vector<std::pair<int, int>>& prof) {
      out << label << ':';
      for (const auto& [deg, cnt] : prof) out << ' ' << deg << 'x' << cnt;
      out << '\n';
    };
    dump("column_degrees", col_degree_profile);
    dump("row_degrees", row_degree_profile);
    return out.str();
  }
};

inline CodeInfoReport run_code_info(const BinaryMatrix& h) {
  CodeInfoReport rep;
  rep.n = h.cols();
  rep.m = h.rows();
  rep.k = h.cols() - h.rows();
  rep.rank = eliminate(h, Permutation::identity(h.cols())).rank;
  auto profile = [](auto degree_of, int count) {
    std::vector<std::pair<int, int>> hist;
    for (int i = 0; i < count; ++i) {
      const int d = degree_of(i);
      auto it = std::find_if(hist.begin(), hist.end(), [&](const auto& p) { return p.first == d; });
      if (it == hist.end())
        hist.emplace_back(d, 1);
      else
        ++it->second;
    }
    std::sort(hist.begin(), hist.end());
    return hist;
  };
  rep.col_degree_profile = profile([&](int j) { return static_cast<int>(h.col(j).size()); }, h.cols());
  rep.row_degree_profile = profile([&](int i) { return static_cast<int>(h.row(i).size()); }, h.rows());
  return rep;
}

// Whitespace-separated reals, for decode-one input vectors.
inline std::vector<double> load_real_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vector file: " + path);
  std::vector<double> out;
  double v;
  while (in >> v) out.push_back(v);
  if (!in.eof()) throw std::runtime_error("malformed real value in " + path);
  return out;
}

}  // namespace ldpcosd
