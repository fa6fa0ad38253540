#pragma once

#include <iosfwd>
#include <string>

#include "wirtflow/types.hpp"

namespace wirtflow {

// Binary formats, all fields little-endian:
//   CVEC1: magic "CVEC1", u32 version=1, then vector body
//   YOBS1: magic "YOBS1", u32 version=1, u64 m, m f64 values
//   vector body: u64 n, then n records of (f64 real, f64 imag)
// The body layout is shared with the CDPE1 code-vector payload.

void write_cvec_body(std::ostream& out, const ComplexVector& v);
ComplexVector read_cvec_body(std::istream& in);

void write_cvec(const std::string& path, const ComplexVector& v);
ComplexVector read_cvec(const std::string& path);

void write_yobs(const std::string& path, const RealVector& y);
RealVector read_yobs(const std::string& path);

namespace detail {
void put_u32(std::ostream& out, std::uint32_t value);
void put_u64(std::ostream& out, std::uint64_t value);
void put_f64(std::ostream& out, double value);
std::uint32_t get_u32(std::istream& in);
std::uint64_t get_u64(std::istream& in);
double get_f64(std::istream& in);
void expect_magic(std::istream& in, const char* magic);
}  // namespace detail

}  // namespace wirtflow
