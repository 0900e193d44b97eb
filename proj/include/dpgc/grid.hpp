/*
Copyright 2026 The dpgc Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpgc/flow_graph.hpp"

namespace dpgc {

/// Grayscale image, row-major, intensities in [0, 255].
/// Pixel (r, c) maps to graph vertex r * width + c.
class GridImage {
 public:
  GridImage(int width, int height, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int size() const { return width_ * height_; }
  std::uint8_t at(int row, int col) const { return pixels_[index(row, col)]; }
  std::uint8_t& at(int row, int col) { return pixels_[index(row, col)]; }
  int index(int row, int col) const { return row * width_ + col; }
  const std::vector<std::uint8_t>& pixels() const { return pixels_; }

  friend bool operator==(const GridImage&, const GridImage&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Reads binary (P5) or plain (P2) PGM. Maxval other than 255 is rescaled.
GridImage read_pgm(std::istream& in);
GridImage read_pgm_file(const std::string& path);
void write_pgm(const GridImage& img, std::ostream& out);

struct ContrastParams {
  /// Width of the Gaussian contrast kernel exp(-d^2 / (2 sigma^2)).
  double sigma = 10.0;
  /// Fraction bits used when rounding real-valued weights to fixed point.
  int fraction_bits = 8;
};

/// 4-neighbour n-link weight for an intensity difference.
double contrast_weight(int intensity_diff, double sigma);

/// Left column tied to the source, right column tied to the sink, n-links from
/// the image gradient. Terminal links carry 1 + (sum of n-links) so they are
/// never the bottleneck. Throws std::invalid_argument if width < 2.
FlowGraph build_seg1(const GridImage& img, double edge_scale, const ContrastParams& params = {});

/// Every pixel tied to both terminals by its intensity:
/// source = unary_scale * (255 - I) / 255, sink = unary_scale * I / 255.
FlowGraph build_seg2(const GridImage& img, double unary_scale, double pairwise_scale,
                     const ContrastParams& params = {});

}  // namespace dpgc
