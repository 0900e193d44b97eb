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
#include "dpgc/bench.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "dpgc/dimacs.hpp"

namespace dpgc {

namespace {

// Portable draws: std distributions differ between standard libraries.
int draw(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::uint8_t clamp_pixel(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

SyntheticKind parse_synthetic_kind(const std::string& s) {
  if (s == "seg1_worst") return SyntheticKind::kSeg1Worst;
  if (s == "seg2_random") return SyntheticKind::kSeg2Random;
  throw std::invalid_argument("unknown synthetic kind '" + s + "'");
}

GridImage gen_synthetic(SyntheticKind kind, int width, int height, std::uint64_t seed) {
  if (width < 1 || height < 1) throw std::invalid_argument("synthetic image needs positive dimensions");
  std::mt19937_64 rng(seed);
  GridImage img(width, height);
  if (kind == SyntheticKind::kSeg1Worst) {
    for (int r = 0; r < height; ++r) {
      const int shift = draw(rng, 0, 3);
      for (int c = 0; c < width; ++c) {
        const int base = width == 1 ? 0 : static_cast<int>(std::lround(255.0 * c / (width - 1)));
        img.at(r, c) = clamp_pixel(base + (c == 0 ? 0 : shift));
      }
    }
    return img;
  }
  const int background = draw(rng, 40, 215);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) img.at(r, c) = static_cast<std::uint8_t>(background);
  const int blobs = draw(rng, 3, 6);
  for (int b = 0; b < blobs; ++b) {
    const int cr = draw(rng, 0, height - 1);
    const int cc = draw(rng, 0, width - 1);
    const int ry = draw(rng, 1, std::max(1, height / 3));
    const int rx = draw(rng, 1, std::max(1, width / 3));
    const int level = draw(rng, 0, 255);
    for (int r = 0; r < height; ++r)
      for (int c = 0; c < width; ++c) {
        const double dy = static_cast<double>(r - cr) / ry;
        const double dx = static_cast<double>(c - cc) / rx;
        if (dx * dx + dy * dy <= 1.0) img.at(r, c) = static_cast<std::uint8_t>(level);
      }
  }
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) img.at(r, c) = clamp_pixel(img.at(r, c) + draw(rng, -24, 24));
  return img;
}

Problem parse_problem(const std::string& s) {
  if (s == "seg1") return Problem::kSeg1;
  if (s == "seg2") return Problem::kSeg2;
  if (s == "raw") return Problem::kRaw;
  throw std::invalid_argument("unknown problem '" + s + "'");
}

const char* to_string(Problem p) {
  switch (p) {
    case Problem::kSeg1:
      return "seg1";
    case Problem::kSeg2:
      return "seg2";
    case Problem::kRaw:
      return "raw";
  }
  return "?";
}

Instance load_instance(const BenchConfig& cfg, std::uint64_t seed) {
  Instance inst;
  if (cfg.problem == Problem::kRaw) {
    if (starts_with(cfg.input, "synth:")) throw std::invalid_argument("raw problems need a DIMACS file");
    inst.name = cfg.input;
    inst.graph = read_dimacs_file(cfg.input);
    return inst;
  }
  std::optional<GridImage> img;
  if (starts_with(cfg.input, "synth:")) {
    // synth:<kind>:<W>x<H>
    const auto second = cfg.input.find(':', 6);
    const auto x = cfg.input.find('x', second == std::string::npos ? 0 : second);
    if (second == std::string::npos || x == std::string::npos) {
      throw std::invalid_argument("synthetic input must look like synth:<kind>:<W>x<H>");
    }
    const SyntheticKind kind = parse_synthetic_kind(cfg.input.substr(6, second - 6));
    const int w = std::stoi(cfg.input.substr(second + 1, x - second - 1));
    const int h = std::stoi(cfg.input.substr(x + 1));
    img = gen_synthetic(kind, w, h, seed);
    inst.name = cfg.input + "@" + std::to_string(seed);
  } else {
    img = read_pgm_file(cfg.input);
    inst.name = cfg.input;
  }
  inst.width = img->width();
  inst.height = img->height();
  inst.graph = cfg.problem == Problem::kSeg1 ? build_seg1(*img, cfg.edge_scale)
                                              : build_seg2(*img, cfg.unary_scale, cfg.pairwise_scale);
  return inst;
}

BenchReport run_bench(const BenchConfig& cfg) {
  if (cfg.repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (cfg.instances < 1) throw std::invalid_argument("instances must be >= 1");
  const bool synthetic = starts_with(cfg.input, "synth:");
  const int count = synthetic ? cfg.instances : 1;
  BenchReport report;
  std::vector<std::string> mismatches;
  for (int i = 0; i < count; ++i) {
    const Instance inst = load_instance(cfg, cfg.seed + static_cast<std::uint64_t>(i));
    SolverConfig scfg = cfg.solver;
    if (!scfg.regions && inst.width > 0) {
      scfg.regions = stripe_regions(inst.width, inst.height, scfg.n_subgraphs, cfg.orientation);
    }

    SolverConfig serial_cfg = scfg;
    serial_cfg.mode = Mode::kSerial;
    serial_cfg.on_iteration = nullptr;
    CutResult serial;
    double t_serial = 1e300;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
      serial = run(serial_cfg, inst.graph);
      t_serial = std::min(t_serial, serial.wall_seconds);
    }

    for (Mode mode : cfg.modes) {
      SolverConfig mcfg = scfg;
      mcfg.mode = mode;
      CutResult res;
      double t_mode = 1e300;
      for (int rep = 0; rep < cfg.repetitions; ++rep) {
        if (rep > 0) mcfg.on_iteration = nullptr;
        res = run(mcfg, inst.graph);
        t_mode = std::min(t_mode, res.wall_seconds);
      }
      BenchRow row;
      row.input = inst.name;
      row.problem = to_string(cfg.problem);
      row.mode = to_string(mode);
      row.n_subgraphs = mode == Mode::kSerial ? 1 : mcfg.n_subgraphs;
      row.iter_patience = mcfg.iter_patience;
      row.merge_group_size = mcfg.merge_group_size;
      row.merge_period = mcfg.merge_period;
      row.converged = res.converged;
      row.iterations = res.iterations;
      row.parallel_iterations = res.parallel_iterations;
      row.first_disagreement = res.first_disagreement;
      row.merges = res.merges;
      row.cut_value = res.cut_value;
      row.serial_cut_value = serial.cut_value;
      row.t_serial = t_serial;
      row.t_parallel = t_mode;
      row.relative_time = t_serial > 0 ? t_mode / t_serial : 0.0;
      row.relative_reused_flow = res.relative_reused_flow;
      row.modeled_bytes = res.transport.bytes;
      row.modeled_seconds = res.transport.modeled_seconds;
      if (res.converged && res.cut_value != serial.cut_value) {
        mismatches.push_back(inst.name + " mode " + row.mode + ": " + res.cut_value.to_string() +
                             " != serial " + serial.cut_value.to_string());
      }
      report.rows.push_back(std::move(row));
    }
  }
  if (!mismatches.empty()) {
    std::string msg = "cut value mismatch:";
    for (const auto& m : mismatches) msg += "\n  " + m;
    throw CutMismatchError(msg);
  }
  return report;
}

std::string csv_header() {
  return "input,problem,mode,n_subgraphs,iter_patience,merge_group_size,merge_period,converged,iterations,"
         "parallel_iterations,first_disagreement,merges,cut_value,serial_cut_value,t_serial,t_parallel,"
         "relative_time,relative_reused_flow,modeled_bytes,modeled_seconds";
}

void write_csv(const BenchReport& report, std::ostream& os, bool mask_times) {
  os << csv_header() << '\n';
  auto num = [](double v) {
    std::ostringstream s;
    s << std::setprecision(6) << v;
    return s.str();
  };
  for (const BenchRow& r : report.rows) {
    os << r.input << ',' << r.problem << ',' << r.mode << ',' << r.n_subgraphs << ',' << r.iter_patience << ','
       << r.merge_group_size << ',' << r.merge_period << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << ','
       << r.parallel_iterations << ',' << r.first_disagreement << ',' << r.merges << ',' << r.cut_value.to_string()
       << ',' << r.serial_cut_value.to_string() << ',';
    if (mask_times) {
      os << "*,*,*,";
    } else {
      os << num(r.t_serial) << ',' << num(r.t_parallel) << ',' << num(r.relative_time) << ',';
    }
    os << num(r.relative_reused_flow) << ',' << r.modeled_bytes << ',' << num(r.modeled_seconds) << '\n';
  }
}

void write_histogram(const BenchReport& report, std::ostream& os, int bins) {
  if (bins < 1) throw std::invalid_argument("need at least one bin");
  std::map<std::string, std::vector<double>> by_mode;
  double hi = 0.0;
  for (const BenchRow& r : report.rows) {
    by_mode[r.mode].push_back(r.relative_time);
    hi = std::max(hi, r.relative_time);
  }
  if (hi <= 0.0) hi = 1.0;
  const double width = hi / bins;
  for (const auto& [mode, values] : by_mode) {
    os << "# mode " << mode << "\n# lo hi count\n";
    std::vector<int> counts(bins, 0);
    for (double v : values) counts[std::min(bins - 1, static_cast<int>(v / width))]++;
    for (int b = 0; b < bins; ++b) os << b * width << ' ' << (b + 1) * width << ' ' << counts[b] << '\n';
    os << "\n\n";
  }
}

}  // namespace dpgc
