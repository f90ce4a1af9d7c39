#pragma once

#include <string>

#include "hfsr/image.hpp"

namespace hfsr {

/// Loads an 8-bit PNG or BMP (by content sniffing). Grayscale inputs are
/// replicated across R, G, B. Throws std::runtime_error on I/O or format
/// problems.
RgbImage load_image(const std::string &path);

/// Writes PNG or BMP (24-bit uncompressed) depending on the file extension;
/// defaults to PNG.
void save_image(const RgbImage &img, const std::string &path);

}  // namespace hfsr
