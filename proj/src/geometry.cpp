#include "rfp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rfp/error.hpp"

namespace rfp {

std::string_view to_string(LayoutKind kind) noexcept {
  switch (kind) {
    case LayoutKind::Highway: return "highway";
    case LayoutKind::Square: return "square";
    case LayoutKind::Hexagonal: return "hexagonal";
    case LayoutKind::Circle: return "circle";
  }
  return "unknown";
}

std::optional<LayoutKind> parse_layout_kind(std::string_view name) noexcept {
  for (LayoutKind k : kAllLayouts) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

bool is_tessellating(LayoutKind kind) noexcept {
  return kind != LayoutKind::Circle;
}

double layout_alpha(LayoutKind kind) noexcept {
  const double sqrt2 = std::numbers::sqrt2;
  switch (kind) {
    case LayoutKind::Highway: return 0.5;
    case LayoutKind::Square:
      return sqrt2 / 6.0 * (sqrt2 + std::log(1.0 + sqrt2));
    case LayoutKind::Hexagonal: return 1.0 / 3.0 + std::log(3.0) / 4.0;
    case LayoutKind::Circle: return 2.0 / 3.0;
  }
  return 0.0;
}

namespace {

[[noreturn]] void throw_no_tessellation(LayoutKind kind) {
  throw Error(ErrorCode::NoTessellation,
              std::string("layout '") + std::string(to_string(kind)) +
                  "' does not tessellate");
}

}  // namespace

double layout_zeta(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Highway: return 1.0;
    case LayoutKind::Square: return 1.0 / std::numbers::sqrt2;
    case LayoutKind::Hexagonal: return std::numbers::sqrt3 / 2.0;
    case LayoutKind::Circle: break;
  }
  throw_no_tessellation(kind);
}

int layout_neighbor_count(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Highway: return 2;
    case LayoutKind::Square: return 8;
    case LayoutKind::Hexagonal: return 6;
    case LayoutKind::Circle: break;
  }
  throw_no_tessellation(kind);
}

Layout Layout::of(LayoutKind kind) {
  if (!is_tessellating(kind)) return Layout(kind, layout_alpha(kind), 0.0, 0);
  return Layout(kind, layout_alpha(kind), layout_zeta(kind),
                layout_neighbor_count(kind));
}

Layout Layout::custom(LayoutKind kind, double alpha, double zeta,
                      int n_neighbors) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "layout alpha must be positive");
  }
  if (!is_tessellating(kind)) return Layout(kind, alpha, 0.0, 0);
  if (!(zeta > 0.0) || n_neighbors < 0) {
    throw Error(ErrorCode::InvalidArgument,
                "layout zeta must be positive and neighbor count nonnegative");
  }
  return Layout(kind, alpha, zeta, n_neighbors);
}

double Layout::zeta() const {
  if (!tessellating()) throw_no_tessellation(kind_);
  return zeta_;
}

int Layout::n_neighbors() const {
  if (!tessellating()) throw_no_tessellation(kind_);
  return n_neighbors_;
}

bool cell_contains(LayoutKind kind, Point2 p) noexcept {
  const double ax = std::abs(p.x);
  const double ay = std::abs(p.y);
  switch (kind) {
    case LayoutKind::Highway: return p.y == 0.0 && ax <= 1.0;
    case LayoutKind::Square: {
      const double half = 1.0 / std::numbers::sqrt2;
      return ax <= half && ay <= half;
    }
    case LayoutKind::Hexagonal: {
      const double s3 = std::numbers::sqrt3;
      return ay <= s3 / 2.0 && s3 * ax + ay <= s3;
    }
    case LayoutKind::Circle: return p.x * p.x + p.y * p.y <= 1.0;
  }
  return false;
}

namespace {

struct ChunkSum {
  double sum = 0.0;
  double sum_sq = 0.0;
};

struct Box {
  double half_w;
  double half_h;
};

Box bounding_box(LayoutKind kind) {
  switch (kind) {
    case LayoutKind::Highway: return {1.0, 0.0};
    case LayoutKind::Square: {
      const double half = 1.0 / std::numbers::sqrt2;
      return {half, half};
    }
    case LayoutKind::Hexagonal: return {1.0, std::numbers::sqrt3 / 2.0};
    case LayoutKind::Circle: return {1.0, 1.0};
  }
  return {1.0, 1.0};
}

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chunk),
                    static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

ChunkSum sample_chunk(LayoutKind kind, std::uint64_t count, std::uint64_t seed,
                      std::uint64_t chunk) {
  auto engine = chunk_engine(seed, chunk);
  const Box box = bounding_box(kind);
  std::uniform_real_distribution<double> ux(-box.half_w, box.half_w);
  std::uniform_real_distribution<double> uy(-box.half_h, box.half_h);
  ChunkSum acc;
  std::uint64_t accepted = 0;
  while (accepted < count) {
    Point2 p{ux(engine), 0.0};
    if (kind != LayoutKind::Highway) p.y = uy(engine);
    if (!cell_contains(kind, p)) continue;
    const double d = std::hypot(p.x, p.y);
    acc.sum += d;
    acc.sum_sq += d * d;
    ++accepted;
  }
  return acc;
}

void check_samples(std::uint64_t n_samples) {
  if (n_samples < 1000) {
    throw Error(ErrorCode::InvalidArgument,
                "Monte Carlo alpha needs at least 1000 samples, got " +
                    std::to_string(n_samples));
  }
}

std::uint64_t chunk_count(std::uint64_t n_samples) {
  return (n_samples + kMonteCarloChunk - 1) / kMonteCarloChunk;
}

std::uint64_t chunk_size(std::uint64_t n_samples, std::uint64_t chunk) {
  const std::uint64_t begin = chunk * kMonteCarloChunk;
  return std::min(kMonteCarloChunk, n_samples - begin);
}

AlphaEstimate reduce(const std::vector<ChunkSum>& chunks, std::uint64_t n) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const ChunkSum& c : chunks) {
    sum += c.sum;
    sum_sq += c.sum_sq;
  }
  const double nd = static_cast<double>(n);
  const double mean = sum / nd;
  const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
  return {mean, std::sqrt(var / nd)};
}

}  // namespace

AlphaEstimate estimate_alpha_monte_carlo(LayoutKind kind,
                                         std::uint64_t n_samples,
                                         std::uint64_t seed) {
  check_samples(n_samples);
  const std::uint64_t n_chunks = chunk_count(n_samples);
  std::vector<ChunkSum> chunks(n_chunks);
  const auto n = static_cast<std::int64_t>(n_chunks);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto ku = static_cast<std::uint64_t>(k);
    chunks[ku] = sample_chunk(kind, chunk_size(n_samples, ku), seed, ku);
  }
  return reduce(chunks, n_samples);
}

AlphaEstimate estimate_alpha_monte_carlo_serial(LayoutKind kind,
                                                std::uint64_t n_samples,
                                                std::uint64_t seed) {
  check_samples(n_samples);
  const std::uint64_t n_chunks = chunk_count(n_samples);
  std::vector<ChunkSum> chunks(n_chunks);
  for (std::uint64_t k = 0; k < n_chunks; ++k) {
    chunks[k] = sample_chunk(kind, chunk_size(n_samples, k), seed, k);
  }
  return reduce(chunks, n_samples);
}

}  // namespace rfp
