#include "wirtflow/vector_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "wirtflow/core.hpp"
#include "wirtflow/errors.hpp"

namespace wirtflow {

namespace detail {

void put_u32(std::ostream& out, std::uint32_t value) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes, 4);
}

void put_u64(std::ostream& out, std::uint64_t value) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

void put_f64(std::ostream& out, double value) {
  put_u64(out, std::bit_cast<std::uint64_t>(value));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw FormatError("unexpected end of file");
  std::uint32_t value = 0;
  for (int i = 0; i < 4; ++i) value |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return value;
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  in.read(reinterpret_cast<char*>(bytes), 8);
  if (!in) throw FormatError("unexpected end of file");
  std::uint64_t value = 0;
  for (int i = 0; i < 8; ++i) value |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return value;
}

double get_f64(std::istream& in) {
  return std::bit_cast<double>(get_u64(in));
}

void expect_magic(std::istream& in, const char* magic) {
  const std::size_t len = std::strlen(magic);
  char buffer[16] = {};
  in.read(buffer, static_cast<std::streamsize>(len));
  if (!in || std::memcmp(buffer, magic, len) != 0) {
    throw FormatError(std::string("bad magic, expected ") + magic);
  }
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  return in;
}

void check_version(std::istream& in, const char* what) {
  const std::uint32_t version = get_u32(in);
  if (version != 1) {
    throw FormatError(std::string(what) + ": unsupported version " + std::to_string(version));
  }
}

}  // namespace

}  // namespace detail

using namespace detail;

void write_cvec_body(std::ostream& out, const ComplexVector& v) {
  put_u64(out, static_cast<std::uint64_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    put_f64(out, v[i].real());
    put_f64(out, v[i].imag());
  }
}

ComplexVector read_cvec_body(std::istream& in) {
  const std::uint64_t n = get_u64(in);
  if (n == 0) throw FormatError("vector body: length must be >= 1");
  ComplexVector v(static_cast<Eigen::Index>(n));
  for (std::uint64_t i = 0; i < n; ++i) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    v[static_cast<Eigen::Index>(i)] = Complex(re, im);
  }
  if (!all_finite(v)) throw FormatError("vector body: non-finite entries");
  return v;
}

void write_cvec(const std::string& path, const ComplexVector& v) {
  auto out = open_out(path);
  out.write("CVEC1", 5);
  put_u32(out, 1);
  write_cvec_body(out, v);
  if (!out) throw IoError("write failed: " + path);
}

ComplexVector read_cvec(const std::string& path) {
  auto in = open_in(path);
  expect_magic(in, "CVEC1");
  check_version(in, "CVEC1");
  return read_cvec_body(in);
}

void write_yobs(const std::string& path, const RealVector& y) {
  auto out = open_out(path);
  out.write("YOBS1", 5);
  put_u32(out, 1);
  put_u64(out, static_cast<std::uint64_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) put_f64(out, y[i]);
  if (!out) throw IoError("write failed: " + path);
}

RealVector read_yobs(const std::string& path) {
  auto in = open_in(path);
  expect_magic(in, "YOBS1");
  check_version(in, "YOBS1");
  const std::uint64_t m = get_u64(in);
  RealVector y(static_cast<Eigen::Index>(m));
  for (std::uint64_t i = 0; i < m; ++i) y[static_cast<Eigen::Index>(i)] = get_f64(in);
  if (!all_finite(y) || (y.size() > 0 && y.minCoeff() < 0.0)) {
    throw FormatError("YOBS1: intensities must be finite and non-negative");
  }
  return y;
}

}  // namespace wirtflow
