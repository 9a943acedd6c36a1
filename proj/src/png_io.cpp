#include "holo/png_io.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>

#include "holo/types.hpp"

namespace holo {

namespace {

void append_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void append_chunk(std::vector<std::uint8_t>& out, const char type[4],
                  const std::vector<std::uint8_t>& payload) {
  append_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  const std::size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), payload.begin(), payload.end());
  const uLong crc = crc32(0, out.data() + crc_start, static_cast<uInt>(out.size() - crc_start));
  append_u32_be(out, static_cast<std::uint32_t>(crc));
}

} // namespace

void write_png_gray16(const std::filesystem::path& path, int width, int height,
                      const std::vector<std::uint16_t>& pixels) {
  if (width <= 0 || height <= 0 ||
      pixels.size() != static_cast<std::size_t>(width) * height)
    throw ValidationError("png: pixel buffer does not match dimensions");

  // scanlines: filter byte 0 + big-endian 16-bit samples
  std::vector<std::uint8_t> raw;
  raw.reserve(static_cast<std::size_t>(height) * (1 + 2 * width));
  for (int r = 0; r < height; ++r) {
    raw.push_back(0);
    for (int c = 0; c < width; ++c) {
      const std::uint16_t v = pixels[static_cast<std::size_t>(r) * width + c];
      raw.push_back(static_cast<std::uint8_t>(v >> 8));
      raw.push_back(static_cast<std::uint8_t>(v));
    }
  }

  uLongf compressed_size = compressBound(static_cast<uLong>(raw.size()));
  std::vector<std::uint8_t> compressed(compressed_size);
  if (compress2(compressed.data(), &compressed_size, raw.data(),
                static_cast<uLong>(raw.size()), Z_BEST_SPEED) != Z_OK)
    throw IoError("png: zlib compression failed");
  compressed.resize(compressed_size);

  std::vector<std::uint8_t> file;
  static const std::uint8_t signature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};
  file.insert(file.end(), signature, signature + 8);

  std::vector<std::uint8_t> ihdr;
  append_u32_be(ihdr, static_cast<std::uint32_t>(width));
  append_u32_be(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(16); // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);  // deflate
  ihdr.push_back(0);  // filter method
  ihdr.push_back(0);  // no interlace
  append_chunk(file, "IHDR", ihdr);
  append_chunk(file, "IDAT", compressed);
  append_chunk(file, "IEND", {});

  std::ofstream stream(path, std::ios::binary);
  if (!stream) throw IoError("png: cannot open " + path.string() + " for writing");
  stream.write(reinterpret_cast<const char*>(file.data()),
               static_cast<std::streamsize>(file.size()));
  if (!stream) throw IoError("png: write failed for " + path.string());
}

} // namespace holo
