#pragma once

#include <iosfwd>
#include <string>

#include "asplund/grid.hpp"

namespace asplund {

// Text format for grid functions ("gridfn v1"):
//
//   gridfn v1 n=<n> lo=<lo_0,...> hi=<hi_0,...> N=<N_0,...>
//   <sample>            one per line, row-major; "inf" for +infinity
//
// Samples are printed with 17 significant digits, so write -> read -> write
// reproduces the bytes and read -> write -> read reproduces the GridFn
// bit-exactly.
void write_gridfn(std::ostream& os, const GridFn& f);
void write_gridfn_file(const std::string& path, const GridFn& f);

GridFn read_gridfn(std::istream& is);
GridFn read_gridfn_file(const std::string& path);

// 17-significant-digit decimal form of v ("inf" for +infinity); round-trips
// through strtod bit-exactly.
std::string fmt_double(double v);

} // namespace asplund
