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
#include "dpgc/grid.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace dpgc {

GridImage::GridImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw std::invalid_argument("image must have at least one pixel");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

namespace {

// Next whitespace-delimited PGM header token, skipping '#' comments.
int read_header_int(std::istream& in) {
  int c = in.peek();
  while (in && (std::isspace(c) || c == '#')) {
    if (c == '#') {
      std::string skip;
      std::getline(in, skip);
    } else {
      in.get();
    }
    c = in.peek();
  }
  int value = -1;
  if (!(in >> value)) throw std::runtime_error("pgm: malformed header");
  return value;
}

}  // namespace

GridImage read_pgm(std::istream& in) {
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
    throw std::runtime_error("pgm: expected P2 or P5 magic");
  }
  const int width = read_header_int(in);
  const int height = read_header_int(in);
  const int maxval = read_header_int(in);
  if (width < 1 || height < 1) throw std::runtime_error("pgm: empty image");
  if (maxval < 1 || maxval > 65535) throw std::runtime_error("pgm: bad maxval");
  GridImage img(width, height);
  auto store = [&](int r, int c, int raw) {
    if (raw < 0 || raw > maxval) throw std::runtime_error("pgm: sample out of range");
    img.at(r, c) = static_cast<std::uint8_t>(std::lround(255.0 * raw / maxval));
  };
  if (magic[1] == '2') {
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        int raw;
        if (!(in >> raw)) throw std::runtime_error("pgm: truncated data");
        store(r, c, raw);
      }
  } else {
    in.get();  // single whitespace after maxval
    const int bytes = maxval < 256 ? 1 : 2;
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        int raw = 0;
        for (int b = 0; b < bytes; ++b) {
          const int ch = in.get();
          if (ch == std::char_traits<char>::eof()) throw std::runtime_error("pgm: truncated data");
          raw = (raw << 8) | (ch & 0xff);
        }
        store(r, c, raw);
      }
  }
  return img;
}

GridImage read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_pgm(in);
}

void write_pgm(const GridImage& img, std::ostream& out) {
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.pixels().size()));
}

double contrast_weight(int intensity_diff, double sigma) {
  const double d = static_cast<double>(intensity_diff);
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

namespace {

void add_contrast_links(FlowGraph& g, const GridImage& img, double scale, const ContrastParams& p) {
  auto link = [&](int r0, int c0, int r1, int c1) {
    const int diff = std::abs(int{img.at(r0, c0)} - int{img.at(r1, c1)});
    const Capacity w = Capacity::round_from(scale * contrast_weight(diff, p.sigma), p.fraction_bits);
    if (w.is_positive()) g.add_edge(img.index(r0, c0), img.index(r1, c1), w, w);
  };
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      if (c + 1 < img.width()) link(r, c, r, c + 1);
      if (r + 1 < img.height()) link(r, c, r + 1, c);
    }
}

}  // namespace

FlowGraph build_seg1(const GridImage& img, double edge_scale, const ContrastParams& params) {
  if (img.width() < 2) throw std::invalid_argument("seg1 needs width >= 2 for distinct source/sink columns");
  if (!(edge_scale > 0)) throw std::invalid_argument("edge_scale must be positive");
  FlowGraph g(img.size(), params.fraction_bits);
  add_contrast_links(g, img, edge_scale, params);
  Capacity large = Capacity(1);
  for (int a = 0; a < g.num_arcs(); ++a) large += g.arc_forward(a) + g.arc_backward(a);
  for (int r = 0; r < img.height(); ++r) {
    g.set_source_cap(img.index(r, 0), large);
    g.set_sink_cap(img.index(r, img.width() - 1), large);
  }
  return g;
}

FlowGraph build_seg2(const GridImage& img, double unary_scale, double pairwise_scale,
                     const ContrastParams& params) {
  if (!(unary_scale > 0) || !(pairwise_scale > 0)) throw std::invalid_argument("scales must be positive");
  FlowGraph g(img.size(), params.fraction_bits);
  for (int r = 0; r < img.height(); ++r)
    for (int c = 0; c < img.width(); ++c) {
      const double i = img.at(r, c);
      const int v = img.index(r, c);
      g.set_source_cap(v, Capacity::round_from(unary_scale * (255.0 - i) / 255.0, params.fraction_bits));
      g.set_sink_cap(v, Capacity::round_from(unary_scale * i / 255.0, params.fraction_bits));
    }
  add_contrast_links(g, img, pairwise_scale, params);
  return g;
}

}  // namespace dpgc
