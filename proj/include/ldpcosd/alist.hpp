#pragma once
// Reader/writer for the alist sparse-matrix interchange format.
// Layout: "N M", "max_col_deg max_row_deg", N column degrees, M row degrees,
// then one 1-based index list per column and per row.  Zero entries are
// padding and are ignored on input; the writer always pads.

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldpcosd/gf2.hpp"

namespace ldpcosd {

class AlistError : public std::runtime_error {
 public:
  AlistError(int line, const std::string& what)
      : std::runtime_error("alist line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

class AlistReader {
 public:
  explicit AlistReader(std::istream& in) : in_(in) {}

  // Next non-blank line as a token stream; throws on EOF.
  std::vector<long long> next_ints(const char* what) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ls(line);
      std::vector<long long> vals;
      std::string tok;
      while (ls >> tok) {
        long long v = 0;
        std::size_t used = 0;
        try {
          v = std::stoll(tok, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != tok.size()) throw AlistError(line_no_, std::string("expected integer, got '") + tok + "'");
        vals.push_back(v);
      }
      if (!vals.empty()) return vals;
    }
    throw AlistError(line_no_ + 1, std::string("unexpected end of input while reading ") + what);
  }

  bool has_more_content() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::istringstream ls(line);
      std::string tok;
      if (ls >> tok) return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istream& in_;
  int line_no_ = 0;
};

inline std::vector<std::int32_t> alist_index_list(const std::vector<long long>& vals, int degree, int max_degree,
                                                  int bound, int line_no, const std::string& what) {
  if (static_cast<int>(vals.size()) > max_degree)
    throw AlistError(line_no, what + ": " + std::to_string(vals.size()) + " entries exceed the declared maximum degree " +
                                  std::to_string(max_degree));
  std::vector<std::int32_t> out;
  out.reserve(static_cast<std::size_t>(degree));
  for (long long v : vals) {
    if (v == 0) continue;  // padding
    if (v < 1 || v > bound)
      throw AlistError(line_no, what + ": index " + std::to_string(v) + " out of range 1.." + std::to_string(bound));
    out.push_back(static_cast<std::int32_t>(v - 1));
  }
  if (static_cast<int>(out.size()) != degree)
    throw AlistError(line_no, what + ": declared degree " + std::to_string(degree) + " but found " +
                                  std::to_string(out.size()) + " nonzero entries");
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw AlistError(line_no, what + ": repeated index " + std::to_string(out[i] + 1));
  return out;
}

}  // namespace detail

inline BinaryMatrix parse_alist(std::istream& in) {
  detail::AlistReader rd(in);

  auto dims = rd.next_ints("the dimension line");
  if (dims.size() != 2) throw AlistError(rd.line_no(), "expected exactly two integers: N M");
  const long long n = dims[0], m = dims[1];
  if (n < 1 || m < 1) throw AlistError(rd.line_no(), "dimensions must be positive");

  auto maxdeg = rd.next_ints("the maximum-degree line");
  if (maxdeg.size() != 2) throw AlistError(rd.line_no(), "expected exactly two integers: max column degree, max row degree");
  const long long dc_max = maxdeg[0], dr_max = maxdeg[1];
  if (dc_max < 0 || dc_max > m || dr_max < 0 || dr_max > n)
    throw AlistError(rd.line_no(), "maximum degrees out of range");

  auto read_degrees = [&](long long count, long long cap, const char* what) {
    std::vector<int> deg;
    deg.reserve(static_cast<std::size_t>(count));
    while (static_cast<long long>(deg.size()) < count) {
      auto vals = rd.next_ints(what);
      for (long long v : vals) {
        if (static_cast<long long>(deg.size()) == count)
          throw AlistError(rd.line_no(), std::string("too many ") + what);
        if (v < 0 || v > cap)
          throw AlistError(rd.line_no(), std::string(what) + " value " + std::to_string(v) +
                                             " out of range 0.." + std::to_string(cap));
        deg.push_back(static_cast<int>(v));
      }
    }
    return deg;
  };
  auto col_deg = read_degrees(n, dc_max, "column degrees");
  auto row_deg = read_degrees(m, dr_max, "row degrees");

  std::vector<std::vector<std::int32_t>> col_adj(static_cast<std::size_t>(n));
  for (long long j = 0; j < n; ++j) {
    auto vals = rd.next_ints("a column adjacency line");
    col_adj[static_cast<std::size_t>(j)] =
        detail::alist_index_list(vals, col_deg[static_cast<std::size_t>(j)], static_cast<int>(dc_max),
                                 static_cast<int>(m), rd.line_no(), "column " + std::to_string(j + 1));
  }
  std::vector<std::vector<std::int32_t>> row_adj(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    auto vals = rd.next_ints("a row adjacency line");
    row_adj[static_cast<std::size_t>(i)] =
        detail::alist_index_list(vals, row_deg[static_cast<std::size_t>(i)], static_cast<int>(dr_max),
                                 static_cast<int>(n), rd.line_no(), "row " + std::to_string(i + 1));
  }
  if (rd.has_more_content()) throw AlistError(rd.line_no(), "trailing content after the matrix definition");

  try {
    return BinaryMatrix(static_cast<int>(m), static_cast<int>(n), std::move(row_adj), std::move(col_adj));
  } catch (const std::invalid_argument& e) {
    throw AlistError(rd.line_no(), std::string("row and column views disagree (") + e.what() + ")");
  }
}

inline BinaryMatrix parse_alist(const std::string& text) {
  std::istringstream in(text);
  return parse_alist(in);
}

inline BinaryMatrix load_alist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alist file: " + path);
  return parse_alist(in);
}

inline std::string write_alist(const BinaryMatrix& h) {
  const int n = h.cols(), m = h.rows();
  const int dc_max = h.max_col_degree(), dr_max = h.max_row_degree();
  std::ostringstream out;
  out << n << ' ' << m << '\n' << dc_max << ' ' << dr_max << '\n';
  for (int j = 0; j < n; ++j) out << h.col(j).size() << (j + 1 < n ? ' ' : '\n');
  for (int i = 0; i < m; ++i) out << h.row(i).size() << (i + 1 < m ? ' ' : '\n');
  auto write_padded = [&](const std::vector<std::int32_t>& lst, int width) {
    for (int t = 0; t < width; ++t) {
      if (t) out << ' ';
      out << (t < static_cast<int>(lst.size()) ? lst[static_cast<std::size_t>(t)] + 1 : 0);
    }
    out << '\n';
  };
  for (int j = 0; j < n; ++j) write_padded(h.col(j), dc_max);
  for (int i = 0; i < m; ++i) write_padded(h.row(i), dr_max);
  return out.str();
}

inline void save_alist(const BinaryMatrix& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write alist file: " + path);
  out << write_alist(h);
}

}  // namespace ldpcosd
