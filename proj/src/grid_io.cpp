#include "asplund/grid_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace asplund {

namespace {

[[noreturn]] void bad_format(const std::string& why) {
  throw std::runtime_error("gridfn: " + why);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& tok) {
  if (tok == "inf") return kInf;
  const char* begin = tok.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + tok.size() || tok.empty()) bad_format("bad number \"" + tok + "\"");
  return v;
}

// Expects "key=value" and returns value.
std::string field(const std::string& tok, const char* key) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0) bad_format("expected " + prefix + "..., got \"" + tok + "\"");
  return tok.substr(prefix.size());
}

} // namespace

std::string fmt_double(double v) {
  if (v == kInf) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_gridfn(std::ostream& os, const GridFn& f) {
  const Grid& g = f.grid();
  os << "gridfn v1 n=" << g.dim();
  os << " lo=";
  for (int i = 0; i < g.dim(); ++i) os << (i ? "," : "") << fmt_double(g.lo(i));
  os << " hi=";
  for (int i = 0; i < g.dim(); ++i) os << (i ? "," : "") << fmt_double(g.hi(i));
  os << " N=";
  for (int i = 0; i < g.dim(); ++i) os << (i ? "," : "") << g.cells(i);
  os << "\n";
  for (double v : f.values()) os << fmt_double(v) << "\n";
}

void write_gridfn_file(const std::string& path, const GridFn& f) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("gridfn: cannot open " + path + " for writing");
  write_gridfn(os, f);
  if (!os) throw std::runtime_error("gridfn: write failed for " + path);
}

GridFn read_gridfn(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) bad_format("missing header");
  std::istringstream hs(header);
  std::string magic, version, tok;
  hs >> magic >> version;
  if (magic != "gridfn" || version != "v1") bad_format("bad magic \"" + header + "\"");
  hs >> tok;
  const int n = std::stoi(field(tok, "n"));
  if (n < 0 || n > 2) bad_format("dimension out of range");
  std::vector<double> lo, hi;
  std::vector<Index> cells;
  if (n > 0) {
    hs >> tok;
    for (const auto& s : split_commas(field(tok, "lo"))) lo.push_back(parse_double(s));
    hs >> tok;
    for (const auto& s : split_commas(field(tok, "hi"))) hi.push_back(parse_double(s));
    hs >> tok;
    for (const auto& s : split_commas(field(tok, "N"))) cells.push_back(std::stoll(s));
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n ||
        static_cast<int>(cells.size()) != n)
      bad_format("header axis counts disagree with n");
  }
  Grid grid = (n == 0) ? Grid::dim0() : Grid(std::move(lo), std::move(hi), std::move(cells));
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(grid.node_total()));
  std::string line;
  while (static_cast<Index>(values.size()) < grid.node_total()) {
    if (!std::getline(is, line)) bad_format("truncated sample list");
    if (line.empty()) continue;
    values.push_back(parse_double(line));
  }
  return GridFn(std::move(grid), std::move(values));
}

GridFn read_gridfn_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("gridfn: cannot open " + path);
  return read_gridfn(is);
}

} // namespace asplund
