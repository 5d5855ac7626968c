#pragma once

#include <filesystem>
#include <iosfwd>

#include "secvis/image.hpp"

namespace secvis {

// Binary PGM (P5) and PPM (P6), maxval 255 only. '#' comments in the
// header are skipped. P5 yields an ImagePlane, P6 an RgbImage.
Image read_pnm(std::istream& in);
Image load_image(const std::filesystem::path& path);

void write_pnm(std::ostream& out, const Image& img);

// Writes to a sibling temporary file and renames it into place, so a
// failed save never leaves a partial file at `path`.
void save_image(const Image& img, const std::filesystem::path& path);

}  // namespace secvis
