// Command-line front end: simulate | decode-one | code-info.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ldpcosd/cli.hpp"

namespace {

using namespace ldpcosd;

struct DecoderFlags {
  std::string variant = "bp-llr";
  int iters = 20;
  double alpha = 1.0;
  double norm_factor = 0.8;
  double offset = 0.15;
};

void add_decoder_flags(CLI::App* cmd, DecoderFlags& f) {
  cmd->add_option("--decoder", f.variant, "Decoder variant")
      ->check(CLI::IsMember({"bp-llr", "bp-prob", "nms", "oms"}))
      ->capture_default_str();
  cmd->add_option("--iters", f.iters, "Maximum decoding iterations I_m")->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Reliability accumulation factor")->capture_default_str();
  cmd->add_option("--norm-factor", f.norm_factor, "Normalized min-sum scaling factor")->capture_default_str();
  cmd->add_option("--offset", f.offset, "Offset min-sum offset")->capture_default_str();
}

DecoderConfig to_decoder_config(const DecoderFlags& f) {
  DecoderConfig c;
  if (f.variant == "bp-llr")
    c.variant = DecoderVariant::BpLlr;
  else if (f.variant == "bp-prob")
    c.variant = DecoderVariant::BpProb;
  else if (f.variant == "nms")
    c.variant = DecoderVariant::MinsumNormalized;
  else
    c.variant = DecoderVariant::MinsumOffset;
  c.max_iterations = f.iters;
  c.alpha = f.alpha;
  c.normalization_factor = f.norm_factor;
  c.offset = f.offset;
  return c;
}

struct OsdFlags {
  std::optional<int> order;
  std::string beta = "1";
};

void add_osd_flags(CLI::App* cmd, OsdFlags& f) {
  cmd->add_option("--osd-order", f.order, "OSD reprocessing order p (omit to disable OSD)");
  cmd->add_option("--osd-beta", f.beta, "OSD survivor count, or 'all'")->capture_default_str();
}

std::optional<OsdConfig> to_osd_config(const OsdFlags& f) {
  // Validate beta even when OSD is disabled: a malformed flag is an error.
  std::optional<long long> beta;
  if (f.beta != "all") {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(f.beta, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f.beta.size() || v < 1)
      throw std::runtime_error("--osd-beta expects a positive integer or 'all', got '" + f.beta + "'");
    beta = v;
  }
  if (!f.order) return std::nullopt;
  OsdConfig c;
  c.order = *f.order;
  c.beta = beta;
  return c;
}

// START:STOP:STEP, or a single value.
void parse_snr(const std::string& spec, double& start, double& stop, double& step) {
  const auto c1 = spec.find(':');
  try {
    if (c1 == std::string::npos) {
      std::size_t used = 0;
      start = stop = std::stod(spec, &used);
      step = 1.0;
      if (used != spec.size()) throw std::runtime_error("");
      return;
    }
    const auto c2 = spec.find(':', c1 + 1);
    if (c2 == std::string::npos) throw std::runtime_error("");
    std::size_t u1 = 0, u2 = 0, u3 = 0;
    const std::string s1 = spec.substr(0, c1), s2 = spec.substr(c1 + 1, c2 - c1 - 1), s3 = spec.substr(c2 + 1);
    start = std::stod(s1, &u1);
    stop = std::stod(s2, &u2);
    step = std::stod(s3, &u3);
    if (u1 != s1.size() || u2 != s2.size() || u3 != s3.size()) throw std::runtime_error("");
  } catch (const std::exception&) {
    throw std::runtime_error("--snr expects START:STOP:STEP or a single value, got '" + spec + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LDPC iterative decoding with reliability-based syndrome reprocessing"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI config file");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run a Monte-Carlo FER/BER sweep");
  std::string sim_code;
  DecoderFlags sim_dec;
  OsdFlags sim_osd;
  std::string sim_snr = "1.0:3.0:0.5";
  std::string sim_source = "zero";
  std::string sim_out = "results.csv";
  std::string sim_format = "csv";
  long long sim_min_fe = 100;
  long long sim_max_frames = 10'000'000;
  std::uint64_t sim_seed = 1;
  int sim_threads = 0;
  sim->add_option("--code", sim_code, "Parity-check matrix (alist)")->required();
  add_decoder_flags(sim, sim_dec);
  add_osd_flags(sim, sim_osd);
  sim->add_option("--snr", sim_snr, "Eb/N0 grid START:STOP:STEP in dB")->capture_default_str();
  sim->add_option("--min-frame-errors", sim_min_fe, "Stop a point after this many frame errors")->capture_default_str();
  sim->add_option("--max-frames", sim_max_frames, "Frame cap per point")->capture_default_str();
  sim->add_option("--seed", sim_seed, "Campaign seed")->capture_default_str();
  sim->add_option("--source", sim_source, "Transmitted data")
      ->check(CLI::IsMember({"zero", "random"}))
      ->capture_default_str();
  sim->add_option("--out", sim_out, "Output file path")->capture_default_str();
  sim->add_option("--format", sim_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sim->add_option("--threads", sim_threads, "Worker threads (0 = hardware)")->capture_default_str();

  // decode-one
  auto* one = app.add_subcommand("decode-one", "Decode a single received vector and print diagnostics");
  std::string one_code, one_yfile;
  DecoderFlags one_dec;
  OsdFlags one_osd;
  std::string one_snr = "2.0";
  one->add_option("--code", one_code, "Parity-check matrix (alist)")->required();
  one->add_option("yfile", one_yfile, "File of whitespace-separated received values")->required();
  add_decoder_flags(one, one_dec);
  add_osd_flags(one, one_osd);
  one->add_option("--snr", one_snr, "Eb/N0 in dB used to derive the noise variance")->capture_default_str();

  // code-info
  auto* info = app.add_subcommand("code-info", "Print code parameters and degree profiles");
  std::string info_code;
  info->add_option("--code", info_code, "Parity-check matrix (alist)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      Campaign c;
      c.code_path = sim_code;
      c.decoder = to_decoder_config(sim_dec);
      c.osd = to_osd_config(sim_osd);
      parse_snr(sim_snr, c.snr_start, c.snr_stop, c.snr_step);
      c.stop.min_frame_errors = sim_min_fe;
      c.stop.max_frames = sim_max_frames;
      c.seed = sim_seed;
      c.source = sim_source == "zero" ? SourceMode::AllZero : SourceMode::RandomCodeword;
      c.out_path = sim_out;
      c.format = sim_format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
      c.threads = sim_threads;
      return cmd_simulate(c, std::cerr, &std::cerr);
    }
    if (one->parsed()) {
      BinaryMatrix h = load_alist(one_code);
      const auto y = load_real_vector(one_yfile);
      double start = 0, stop = 0, step = 0;
      parse_snr(one_snr, start, stop, step);
      const double rate = static_cast<double>(h.cols() - h.rows()) / static_cast<double>(h.cols());
      const double sigma2 = sigma2_from_ebn0(start, rate);
      const auto rep = run_decode_one(h, y, sigma2, to_decoder_config(one_dec), to_osd_config(one_osd));
      std::cout << rep.to_text();
      return 0;
    }
    BinaryMatrix h = load_alist(info_code);
    std::cout << run_code_info(h).to_text();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
