#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "helpers.hpp"
#include "ldpcosd/cli.hpp"

using namespace ldpcosd;
using namespace testutil;

namespace {

const std::string kCodesDir = LDPCOSD_CODES_DIR;
const std::string kHamming = kCodesDir + "/hamming_7_4.alist";

struct CliResult {
  int status = -1;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(LDPCOSD_CLI_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  for (;;) {
    const std::size_t got = std::fread(buf, 1, sizeof(buf), pipe);
    if (got == 0) break;
    out.append(buf, got);
  }
  const int rc = pclose(pipe);
  CliResult res;
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  res.output = std::move(out);
  return res;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << content;
}

// Scratch files go into a per-run temp directory, never the working directory.
std::string tmp_path(const std::string& name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() /
             ("ldpcosd_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

// Strip the wall_seconds column (the only nondeterministic CSV field).
std::string mask_wall(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) {
      const auto cut = line.rfind(',');
      if (cut != std::string::npos) line.resize(cut);
    }
    header = false;
    out += line;
    out += '\n';
  }
  return out;
}

Campaign tiny_campaign() {
  Campaign c;
  c.code_path = kHamming;
  c.decoder.max_iterations = 10;
  c.snr_start = 2.0;
  c.snr_stop = 3.0;
  c.snr_step = 0.5;
  c.stop.min_frame_errors = 5;
  c.stop.max_frames = 2048;
  c.seed = 3;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("snr grid construction") {
  const auto g = make_grid(1.0, 3.0, 0.5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == Catch::Approx(1.0));
  CHECK(g.back() == Catch::Approx(3.0));

  CHECK(make_grid(2.5, 2.5, 1.0) == std::vector<double>{2.5});
  CHECK(make_grid(1.0, 3.5, 0.25).size() == 11);  // robust to 0.25 accumulation
  CHECK(make_grid(0.0, 0.999999, 0.5).size() == 2);
  CHECK_THROWS_AS(make_grid(1.0, 3.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(1.0, 3.0, -0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("csv formatting is pinned") {
  CHECK(csv_header() ==
        "ebn0_db,frames,frame_errors,bit_errors,fer,ber,avg_iterations,osd_invocations,"
        "osd_rescues,wall_seconds");

  PointRow row;
  row.ebn0_db = 2.0;
  row.stats.frames = 1000;
  row.stats.frame_errors = 10;
  row.stats.bit_errors = 40;
  row.stats.bits = 16000;
  row.stats.iteration_sum = 5000;
  row.stats.osd_invocations = 7;
  row.stats.osd_rescues = 3;
  row.wall_seconds = 0.125;
  CHECK(csv_row(row) == "2.0000,1000,10,40,1.000000e-02,2.500000e-03,5.000000,7,3,0.125");

  const std::string csv = format_csv({row});
  CHECK(csv == csv_header() + "\n" + csv_row(row) + "\n");
}

TEST_CASE("json output carries the same fields") {
  PointRow row;
  row.ebn0_db = 1.5;
  row.stats.frames = 2048;
  row.stats.frame_errors = 64;
  row.stats.bit_errors = 200;
  row.stats.bits = 2048 * 7;
  row.stats.iteration_sum = 4096;
  row.stats.osd_invocations = 70;
  row.stats.osd_rescues = 6;
  row.wall_seconds = 1.0;

  const auto doc = nlohmann::json::parse(format_json({row}));
  REQUIRE(doc.contains("points"));
  REQUIRE(doc["points"].size() == 1);
  const auto& p = doc["points"][0];
  CHECK(p["ebn0_db"].get<double>() == Catch::Approx(1.5));
  CHECK(p["frames"].get<long long>() == 2048);
  CHECK(p["frame_errors"].get<long long>() == 64);
  CHECK(p["bit_errors"].get<long long>() == 200);
  CHECK(p["fer"].get<double>() == Catch::Approx(64.0 / 2048.0));
  CHECK(p["ber"].get<double>() == Catch::Approx(200.0 / (2048.0 * 7.0)));
  CHECK(p["avg_iterations"].get<double>() == Catch::Approx(2.0));
  CHECK(p["osd_invocations"].get<long long>() == 70);
  CHECK(p["osd_rescues"].get<long long>() == 6);
  CHECK(format_json({row}).back() == '\n');
}

TEST_CASE("campaign validation") {
  Campaign c = tiny_campaign();
  CHECK_NOTHROW(c.validate());

  c.code_path.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = tiny_campaign();
  c.snr_step = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = tiny_campaign();
  c.snr_stop = c.snr_start - 1.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  c = tiny_campaign();
  c.threads = -1;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);

  CHECK(resolve_threads(4) == 4);
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("run_campaign matches run_point on each grid entry") {
  const BinaryMatrix h = random_code(8, 16, 3, 131);
  Campaign c = tiny_campaign();
  c.snr_start = 2.0;
  c.snr_stop = 2.5;
  c.snr_step = 0.5;
  c.stop.min_frame_errors = 20;
  c.stop.max_frames = 2048;
  c.seed = 17;
  const auto rows = run_campaign(h, c);
  REQUIRE(rows.size() == 2);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ChannelConfig ch;
    ch.ebn0_db = rows[i].ebn0_db;
    ch.code_rate = 0.5;
    ch.seed = 17;
    CHECK(rows[i].stats == run_point(h, c.decoder, c.osd, ch, c.stop));
    CHECK(rows[i].wall_seconds >= 0.0);
  }
  CHECK(rows[0].ebn0_db == Catch::Approx(2.0));
  CHECK(rows[1].ebn0_db == Catch::Approx(2.5));
}

TEST_CASE("cmd_simulate reports file errors with a nonzero status") {
  Campaign c = tiny_campaign();
  c.code_path = "no_such_code.alist";
  std::ostringstream err;
  CHECK(cmd_simulate(c, err) == 1);
  CHECK(err.str().find("error:") != std::string::npos);
}

TEST_CASE("decode-one reporting") {
  const BinaryMatrix h = hamming74();

  SECTION("noiseless codeword converges without osd") {
    const auto rep = run_decode_one(h, std::vector<double>(7, -1.0), 0.5, DecoderConfig{}, std::nullopt);
    CHECK(rep.converged);
    CHECK(rep.iterations == 0);
    CHECK_FALSE(rep.osd_invoked);
    CHECK(rep.syndrome_ok);
    CHECK(rep.codeword == BitVec(7, 0));
    CHECK(rep.to_text().find("converged: yes") != std::string::npos);
  }

  SECTION("all-zero input resolves by the tie rule to the zero codeword") {
    const auto rep = run_decode_one(h, std::vector<double>(7, 0.0), 0.5, DecoderConfig{}, std::nullopt);
    CHECK(rep.syndrome_ok);
  }

  SECTION("a forced failure hands 11 candidates to order-2 osd") {
    // One strongly wrong bit; a single iteration cannot fix it.
    std::vector<double> y(7, -2.0);
    y[0] = 2.0;
    DecoderConfig dec;
    dec.max_iterations = 1;
    OsdConfig osd;
    osd.order = 2;
    osd.beta = std::nullopt;
    const auto rep = run_decode_one(h, y, 1.0, dec, osd);
    CHECK_FALSE(rep.converged);
    CHECK(rep.osd_invoked);
    CHECK(rep.candidates == 11);  // information set of size 4, orders 0..2
    CHECK(rep.syndrome_ok);
    CHECK(rep.codeword == BitVec(7, 0));
    CHECK(rep.to_text().find("candidates: 11") != std::string::npos);
  }

  SECTION("length mismatch") {
    CHECK_THROWS_AS(run_decode_one(h, std::vector<double>(6, -1.0), 0.5, DecoderConfig{}, std::nullopt),
                    std::invalid_argument);
  }
}

TEST_CASE("code info reporting") {
  const auto rep = run_code_info(hamming74());
  CHECK(rep.n == 7);
  CHECK(rep.m == 3);
  CHECK(rep.k == 4);
  CHECK(rep.rank == 3);
  CHECK(rep.col_degree_profile == std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 1}});
  CHECK(rep.row_degree_profile == std::vector<std::pair<int, int>>{{4, 3}});
  CHECK(rep.to_text().find("warning") == std::string::npos);

  const auto deficient = run_code_info(
      BinaryMatrix::from_dense({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}}, 3));
  CHECK(deficient.rank == 2);
  CHECK(deficient.to_text().find("warning: parity-check matrix is rank deficient") != std::string::npos);
}

TEST_CASE("real vector loading") {
  write_file(tmp_path("vec_ok.txt"), "0.5 -1.25\n3e-2\t7\n");
  const auto v = load_real_vector(tmp_path("vec_ok.txt"));
  REQUIRE(v.size() == 4);
  CHECK(v[1] == Catch::Approx(-1.25));
  CHECK(v[2] == Catch::Approx(0.03));

  write_file(tmp_path("vec_bad.txt"), "0.5 oops 1.0\n");
  CHECK_THROWS_AS(load_real_vector(tmp_path("vec_bad.txt")), std::runtime_error);
  CHECK_THROWS_AS(load_real_vector(tmp_path("vec_missing.txt")), std::runtime_error);
}

TEST_CASE("cli smoke: code-info") {
  const auto res = run_cli("code-info --code " + kHamming);
  CHECK(res.status == 0);
  CHECK(res.output.find("n: 7") != std::string::npos);
  CHECK(res.output.find("m: 3") != std::string::npos);
  CHECK(res.output.find("rank: 3") != std::string::npos);

  const auto bad = run_cli("code-info --code missing.alist");
  CHECK(bad.status == 1);
  CHECK(bad.output.find("error:") != std::string::npos);
}

TEST_CASE("cli smoke: simulate is deterministic for a fixed seed") {
  const std::string flags = "simulate --code " + kHamming +
                            " --snr 2.0:3.0:0.5 --min-frame-errors 5 --max-frames 2048"
                            " --seed 3 --threads 2 --out ";
  const auto a = run_cli(flags + tmp_path("sim_a.csv"));
  REQUIRE(a.status == 0);
  const auto b = run_cli(flags + tmp_path("sim_b.csv"));
  REQUIRE(b.status == 0);

  const std::string csv_a = read_file(tmp_path("sim_a.csv"));
  const std::string csv_b = read_file(tmp_path("sim_b.csv"));
  CHECK(mask_wall(csv_a) == mask_wall(csv_b));

  // Header plus one row per grid point.
  std::istringstream in(csv_a);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 4);
  CHECK(csv_a.rfind(csv_header(), 0) == 0);
}

TEST_CASE("cli smoke: json format") {
  const auto res = run_cli("simulate --code " + kHamming +
                           " --snr 2.5 --min-frame-errors 3 --max-frames 1024 --seed 4"
                           " --threads 1 --format json --out " + tmp_path("sim_j.json"));
  REQUIRE(res.status == 0);
  const auto doc = nlohmann::json::parse(read_file(tmp_path("sim_j.json")));
  REQUIRE(doc["points"].size() == 1);
  CHECK(doc["points"][0]["ebn0_db"].get<double>() == Catch::Approx(2.5));
  CHECK(doc["points"][0]["frames"].get<long long>() >= 1);
}

TEST_CASE("cli smoke: decode-one") {
  write_file(tmp_path("y_clean.txt"), "-1 -1 -1 -1 -1 -1 -1\n");
  const auto clean = run_cli("decode-one --code " + kHamming + " " + tmp_path("y_clean.txt") + " --snr 2.0");
  CHECK(clean.status == 0);
  CHECK(clean.output.find("converged: yes") != std::string::npos);
  CHECK(clean.output.find("codeword: 0000000") != std::string::npos);

  write_file(tmp_path("y_fail.txt"), "2 -2 -2 -2 -2 -2 -2\n");
  const auto failed = run_cli("decode-one --code " + kHamming + " " + tmp_path("y_fail.txt") +
                              " --snr 2.0 --iters 1 --osd-order 2 --osd-beta all");
  CHECK(failed.status == 0);
  CHECK(failed.output.find("osd: invoked") != std::string::npos);
  CHECK(failed.output.find("candidates: 11") != std::string::npos);
  CHECK(failed.output.find("syndrome_ok: yes") != std::string::npos);

  const auto mismatch =
      run_cli("decode-one --code " + kHamming + " " + tmp_path("y_clean.txt") + " --snr 2.0 --osd-beta 0");
  CHECK(mismatch.status != 0);
}

TEST_CASE("cli smoke: config file with flag override") {
  std::ostringstream ini;
  ini << "[simulate]\n"
      << "code=" << kHamming << "\n"
      << "snr=2.0:2.5:0.5\n"
      << "min-frame-errors=3\n"
      << "max-frames=1024\n"
      << "seed=5\n"
      << "threads=1\n"
      << "out=" << tmp_path("cfg_run.csv") << "\n";
  write_file(tmp_path("campaign.ini"), ini.str());

  const auto cfg = run_cli("--config " + tmp_path("campaign.ini") + " simulate");
  REQUIRE(cfg.status == 0);

  const auto direct = run_cli("simulate --code " + kHamming +
                              " --snr 2.0:2.5:0.5 --min-frame-errors 3 --max-frames 1024"
                              " --seed 5 --threads 1 --out " + tmp_path("direct_run.csv"));
  REQUIRE(direct.status == 0);
  CHECK(mask_wall(read_file(tmp_path("cfg_run.csv"))) == mask_wall(read_file(tmp_path("direct_run.csv"))));

  // A command-line flag overrides the config file value.
  const auto over = run_cli("--config " + tmp_path("campaign.ini") + " simulate --seed 9 --out " +
                            tmp_path("override_run.csv"));
  REQUIRE(over.status == 0);
  const auto nine = run_cli("simulate --code " + kHamming +
                            " --snr 2.0:2.5:0.5 --min-frame-errors 3 --max-frames 1024"
                            " --seed 9 --threads 1 --out " + tmp_path("nine_run.csv"));
  REQUIRE(nine.status == 0);
  CHECK(mask_wall(read_file(tmp_path("override_run.csv"))) == mask_wall(read_file(tmp_path("nine_run.csv"))));
  CHECK(mask_wall(read_file(tmp_path("override_run.csv"))) != mask_wall(read_file(tmp_path("cfg_run.csv"))));
}
