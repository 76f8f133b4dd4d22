#pragma once

#include "curvseg/energy.hpp"
#include "curvseg/raster.hpp"

#include <stdexcept>
#include <string>

namespace curvseg {

/// Parse or write failure; carries the byte offset where parsing stopped.
class io_error : public std::runtime_error {
  public:
    io_error(const std::string& msg, std::size_t byte_offset = 0)
        : std::runtime_error(msg), offset_(byte_offset) {}
    std::size_t byte_offset() const { return offset_; }

  private:
    std::size_t offset_;
};

/// Reads P2 (ASCII) or P5 (binary) grayscale, maxval <= 65535, header
/// comments tolerated; values normalized to [0,1].  The file's top row
/// becomes the image's highest y row.  Grid spacing defaults to 1 with
/// the origin at (0,0); callers may rescale afterwards.
RasterImage read_pgm(const std::string& path);

/// P5, maxval 255.  Round-trips exactly for 255-quantized values.
void write_pgm(const RasterImage& img, const std::string& path);

/// P5 label image of the visible-part decomposition: background 0,
/// layer i at gray floor(255*i/(k+1)).
void write_label_image(const LayeredSegmentation& seg, const RasterImage& frame,
                       const std::string& path);

}  // namespace curvseg
