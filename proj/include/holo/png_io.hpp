#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace holo {

/// Writes a 16-bit grayscale PNG (zlib-compressed, filter type 0).
void write_png_gray16(const std::filesystem::path& path, int width, int height,
                      const std::vector<std::uint16_t>& pixels);

} // namespace holo
