#pragma once

#include <string>
#include <vector>

#include "wirtflow/errors.hpp"
#include "wirtflow/types.hpp"

namespace wirtflow {

class UnsupportedFormatError : public FormatError {
 public:
  explicit UnsupportedFormatError(const std::string& what) : FormatError(what) {}
};
class MalformedHeaderError : public FormatError {
 public:
  explicit MalformedHeaderError(const std::string& what) : FormatError(what) {}
};
class UnsupportedMaxvalError : public FormatError {
 public:
  explicit UnsupportedMaxvalError(const std::string& what) : FormatError(what) {}
};
class TruncatedPayloadError : public FormatError {
 public:
  explicit TruncatedPayloadError(const std::string& what) : FormatError(what) {}
};

/// Pixel data as one real vector per channel, vectorized row-major,
/// values in [0, 1].
struct ImageProblem {
  int width = 0;
  int height = 0;
  std::vector<RealVector> channels;  // size 1 (gray) or 3 (RGB)

  int pixel_count() const { return width * height; }
};

/// Reads binary PGM (P5) or PPM (P6) with 8-bit samples.
ImageProblem ingest_image(const std::string& path);

/// Writes P5 (1 channel) or P6 (3 channels) with maxval 255; values are
/// clamped to [0, 1] and rounded.
void write_image(const std::string& path, const ImageProblem& image);

}  // namespace wirtflow
