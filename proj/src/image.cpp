#include "wirtflow/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>

namespace wirtflow {

namespace {

// Reads the next whitespace/comment-delimited header token, leaving the
// terminating whitespace byte in the stream.
std::string next_header_token(std::istream& in) {
  std::string token;
  int c = in.get();
  while (c != EOF) {
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
    } else if (std::isspace(c)) {
      c = in.get();
    } else {
      break;
    }
  }
  while (c != EOF && !std::isspace(c) && c != '#') {
    token.push_back(static_cast<char>(c));
    c = in.get();
  }
  if (c != EOF) in.unget();
  return token;
}

int parse_positive(const std::string& token, const char* what) {
  if (token.empty()) throw MalformedHeaderError(std::string("missing ") + what);
  for (char c : token) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw MalformedHeaderError(std::string("non-numeric ") + what + ": " + token);
    }
  }
  long value = 0;
  try {
    value = std::stol(token);
  } catch (const std::exception&) {
    throw MalformedHeaderError(std::string("unparseable ") + what + ": " + token);
  }
  if (value < 1 || value > 1 << 20) {
    throw MalformedHeaderError(std::string("out-of-range ") + what + ": " + token);
  }
  return static_cast<int>(value);
}

}  // namespace

ImageProblem ingest_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open image: " + path);

  char magic[2] = {};
  in.read(magic, 2);
  if (!in) throw MalformedHeaderError("image too short for a magic number");
  int channels = 0;
  if (magic[0] == 'P' && magic[1] == '5') {
    channels = 1;
  } else if (magic[0] == 'P' && magic[1] == '6') {
    channels = 3;
  } else {
    throw UnsupportedFormatError("unsupported image magic, expected P5 or P6");
  }

  const int width = parse_positive(next_header_token(in), "width");
  const int height = parse_positive(next_header_token(in), "height");
  const int maxval = parse_positive(next_header_token(in), "maxval");
  if (maxval > 255) {
    throw UnsupportedMaxvalError("only 8-bit samples supported, maxval was " +
                                 std::to_string(maxval));
  }
  // exactly one whitespace byte separates the header from the payload
  const int separator = in.get();
  if (separator == EOF || !std::isspace(separator)) {
    throw MalformedHeaderError("missing whitespace before pixel payload");
  }

  const std::size_t pixel_count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<unsigned char> payload(pixel_count * static_cast<std::size_t>(channels));
  in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(payload.size()));
  if (static_cast<std::size_t>(in.gcount()) != payload.size()) {
    throw TruncatedPayloadError("pixel payload shorter than width*height*channels");
  }

  ImageProblem image;
  image.width = width;
  image.height = height;
  image.channels.assign(static_cast<std::size_t>(channels),
                        RealVector(static_cast<Eigen::Index>(pixel_count)));
  for (std::size_t p = 0; p < pixel_count; ++p) {
    for (int c = 0; c < channels; ++c) {
      image.channels[static_cast<std::size_t>(c)][static_cast<Eigen::Index>(p)] =
          static_cast<double>(payload[p * static_cast<std::size_t>(channels) +
                                      static_cast<std::size_t>(c)]) /
          static_cast<double>(maxval);
    }
  }
  return image;
}

void write_image(const std::string& path, const ImageProblem& image) {
  const std::size_t channels = image.channels.size();
  if (channels != 1 && channels != 3) {
    throw PreconditionError("write_image: expected 1 or 3 channels");
  }
  const std::size_t pixel_count = static_cast<std::size_t>(image.pixel_count());
  for (const auto& channel : image.channels) {
    if (channel.size() != static_cast<Eigen::Index>(pixel_count)) {
      throw DimensionError("write_image: channel size disagrees with dimensions");
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << (channels == 1 ? "P5" : "P6") << '\n'
      << image.width << ' ' << image.height << '\n'
      << 255 << '\n';
  std::vector<unsigned char> payload(pixel_count * channels);
  for (std::size_t p = 0; p < pixel_count; ++p) {
    for (std::size_t c = 0; c < channels; ++c) {
      const double value = image.channels[c][static_cast<Eigen::Index>(p)];
      const double clamped = std::min(std::max(value, 0.0), 1.0);
      payload[p * channels + c] =
          static_cast<unsigned char>(std::lround(clamped * 255.0));
    }
  }
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace wirtflow
