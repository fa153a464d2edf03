// Constructs a (dv,dc)-regular LDPC parity-check matrix by progressive edge
// growth and writes it in alist format.  Deterministic for a fixed seed; if
// the resulting matrix is rank deficient, consecutive seeds are tried until a
// full-rank construction is found.

#include <cstdint>
#include <iostream>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpcosd/alist.hpp"
#include "ldpcosd/gf2.hpp"

namespace {

using ldpcosd::BinaryMatrix;

class PegBuilder {
 public:
  PegBuilder(int n, int m, int dv, std::uint64_t seed)
      : n_(n), m_(m), dv_(dv), rng_(seed), var_checks_(static_cast<std::size_t>(n)),
        check_vars_(static_cast<std::size_t>(m)), cdeg_(static_cast<std::size_t>(m), 0) {
    const long long edges = static_cast<long long>(n) * dv;
    if (edges % m != 0) throw std::runtime_error("n*dv must be divisible by m for a regular construction");
    dc_ = static_cast<int>(edges / m);
  }

  BinaryMatrix build() {
    for (int v = 0; v < n_; ++v)
      for (int e = 0; e < dv_; ++e) place_edge(v, e == 0);
    std::vector<std::vector<std::int32_t>> rows(check_vars_.size());
    for (std::size_t c = 0; c < check_vars_.size(); ++c)
      rows[c].assign(check_vars_[c].begin(), check_vars_[c].end());
    return BinaryMatrix::from_rows(m_, n_, std::move(rows));
  }

 private:
  void place_edge(int v, bool first) {
    std::vector<int> cands;
    if (first) {
      for (int c = 0; c < m_; ++c)
        if (cdeg_[static_cast<std::size_t>(c)] < dc_) cands.push_back(c);
    } else {
      cands = frontier_candidates(v);
    }
    const int c = pick_min_degree(cands);
    var_checks_[static_cast<std::size_t>(v)].push_back(c);
    check_vars_[static_cast<std::size_t>(c)].push_back(v);
    ++cdeg_[static_cast<std::size_t>(c)];
  }

  // BFS the tree rooted at v over the current graph; prefer checks that are
  // unreachable from v, otherwise those at maximal depth.
  std::vector<int> frontier_candidates(int v) {
    std::vector<int> cdist(static_cast<std::size_t>(m_), -1);
    std::vector<char> vvis(static_cast<std::size_t>(n_), 0);
    vvis[static_cast<std::size_t>(v)] = 1;
    std::vector<int> frontier{v};
    int depth = 0;
    int max_depth = -1;
    while (!frontier.empty()) {
      std::vector<int> next_checks;
      for (int fv : frontier)
        for (int c : var_checks_[static_cast<std::size_t>(fv)])
          if (cdist[static_cast<std::size_t>(c)] < 0) {
            cdist[static_cast<std::size_t>(c)] = depth;
            max_depth = depth;
            next_checks.push_back(c);
          }
      std::vector<int> next_vars;
      for (int c : next_checks)
        for (int w : check_vars_[static_cast<std::size_t>(c)])
          if (!vvis[static_cast<std::size_t>(w)]) {
            vvis[static_cast<std::size_t>(w)] = 1;
            next_vars.push_back(w);
          }
      frontier = std::move(next_vars);
      ++depth;
    }

    std::vector<int> cands;
    for (int c = 0; c < m_; ++c)
      if (cdist[static_cast<std::size_t>(c)] < 0 && cdeg_[static_cast<std::size_t>(c)] < dc_) cands.push_back(c);
    if (cands.empty())
      for (int c = 0; c < m_; ++c)
        if (cdist[static_cast<std::size_t>(c)] == max_depth && cdeg_[static_cast<std::size_t>(c)] < dc_)
          cands.push_back(c);
    if (cands.empty())  // saturated frontier; fall back to any check with capacity
      for (int c = 0; c < m_; ++c)
        if (cdeg_[static_cast<std::size_t>(c)] < dc_ && !adjacent(v, c)) cands.push_back(c);
    if (cands.empty()) throw std::runtime_error("edge placement failed; graph is saturated");
    return cands;
  }

  bool adjacent(int v, int c) const {
    for (int cc : var_checks_[static_cast<std::size_t>(v)])
      if (cc == c) return true;
    return false;
  }

  int pick_min_degree(const std::vector<int>& cands) {
    int best = cdeg_[static_cast<std::size_t>(cands.front())];
    for (int c : cands) best = std::min(best, cdeg_[static_cast<std::size_t>(c)]);
    std::vector<int> ties;
    for (int c : cands)
      if (cdeg_[static_cast<std::size_t>(c)] == best) ties.push_back(c);
    return ties[static_cast<std::size_t>(rng_() % ties.size())];
  }

  int n_, m_, dv_, dc_ = 0;
  std::mt19937_64 rng_;
  std::vector<std::vector<int>> var_checks_, check_vars_;
  std::vector<int> cdeg_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regular LDPC code construction (progressive edge growth)"};
  int n = 504, m = 252, dv = 3, tries = 32;
  std::uint64_t seed = 1;
  std::string out = "code.alist";
  app.add_option("--n", n, "Block length")->capture_default_str();
  app.add_option("--m", m, "Number of checks")->capture_default_str();
  app.add_option("--dv", dv, "Variable degree")->capture_default_str();
  app.add_option("--seed", seed, "Construction seed")->capture_default_str();
  app.add_option("--tries", tries, "Seeds to try until full rank")->capture_default_str();
  app.add_option("--out", out, "Output alist path")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    for (int t = 0; t < tries; ++t) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
      BinaryMatrix h = PegBuilder(n, m, dv, s).build();
      const int rank = ldpcosd::eliminate(h, ldpcosd::Permutation::identity(n)).rank;
      if (rank < m) {
        std::cerr << "seed " << s << ": rank " << rank << " < " << m << ", retrying\n";
        continue;
      }
      ldpcosd::save_alist(h, out);
      std::cout << "wrote " << out << " (n=" << n << ", m=" << m << ", dv=" << dv << ", seed=" << s
                << ", full rank)\n";
      return 0;
    }
    std::cerr << "error: no full-rank construction found in " << tries << " tries\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
