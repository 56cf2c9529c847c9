#include "fracdim/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fracdim/errors.hpp"

namespace fracdim {

namespace {

void sort_dedup(PointCloud& cloud) {
  if (cloud.dimension == 1) {
    std::sort(cloud.xs.begin(), cloud.xs.end());
    cloud.xs.erase(std::unique(cloud.xs.begin(), cloud.xs.end()), cloud.xs.end());
    return;
  }
  std::vector<std::pair<double, double>> pts(cloud.xs.size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = {cloud.xs[k], cloud.ys[k]};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  cloud.xs.resize(pts.size());
  cloud.ys.resize(pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    cloud.xs[k] = pts[k].first;
    cloud.ys[k] = pts[k].second;
  }
}

void check_budget(std::size_t branches, int depth, std::size_t budget) {
  std::size_t count = 1;
  for (int k = 0; k < depth; ++k) {
    if (count > budget / branches)
      throw budget_error("word budget exceeded: " + std::to_string(branches) + "^" +
                         std::to_string(depth) + " words requested");
    count *= branches;
  }
}

struct Interval1D {
  double ratio;
  double translate;
};

PointCloud cloud_1d(const std::vector<Interval1D>& maps, int depth, Sampling sampling,
                    std::size_t budget) {
  check_budget(maps.size(), depth, budget);
  PointCloud cloud;
  cloud.dimension = 1;
  double maxLen = 0.0;
  // DFS over words, tracking the image interval [x, x + len].
  struct Frame {
    double x;
    double len;
    int depth;
  };
  std::vector<Frame> stack{{0.0, 1.0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == depth) {
      maxLen = std::max(maxLen, f.len);
      cloud.xs.push_back(f.x);
      if (sampling == Sampling::Corners) cloud.xs.push_back(f.x + f.len);
      continue;
    }
    for (const Interval1D& m : maps)
      stack.push_back({f.x + f.len * m.translate, f.len * m.ratio, f.depth + 1});
  }
  cloud.resolution = sampling == Sampling::Corners ? maxLen / 2.0 : maxLen;
  sort_dedup(cloud);
  return cloud;
}

struct Rect2D {
  double c, d, a, b;
};

PointCloud cloud_2d(const std::vector<Rect2D>& maps, int depth, Sampling sampling,
                    std::size_t budget) {
  check_budget(maps.size(), depth, budget);
  PointCloud cloud;
  cloud.dimension = 2;
  double maxDiag = 0.0;
  struct Frame {
    double x, y, w, h;
    int depth;
  };
  std::vector<Frame> stack{{0.0, 0.0, 1.0, 1.0, 0}};
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    if (f.depth == depth) {
      maxDiag = std::max(maxDiag, std::hypot(f.w, f.h));
      cloud.xs.push_back(f.x);
      cloud.ys.push_back(f.y);
      if (sampling == Sampling::Corners) {
        cloud.xs.push_back(f.x + f.w);
        cloud.ys.push_back(f.y);
        cloud.xs.push_back(f.x);
        cloud.ys.push_back(f.y + f.h);
        cloud.xs.push_back(f.x + f.w);
        cloud.ys.push_back(f.y + f.h);
      }
      continue;
    }
    for (const Rect2D& m : maps)
      stack.push_back({f.x + f.w * m.a, f.y + f.h * m.b, f.w * m.c, f.h * m.d, f.depth + 1});
  }
  cloud.resolution = sampling == Sampling::Corners ? maxDiag / 2.0 : maxDiag;
  sort_dedup(cloud);
  return cloud;
}

}  // namespace

PointCloud point_cloud(const System& system, int depth, Sampling sampling, std::size_t budget) {
  if (depth < 0) throw input_error("depth must be nonnegative");
  if (const auto* ifs = std::get_if<SimilarityIFS1D>(&system)) {
    std::vector<Interval1D> maps;
    maps.reserve(ifs->maps.size());
    for (const SimilarityMap1D& m : ifs->maps) maps.push_back({m.ratio.val, m.translate.val});
    return cloud_1d(maps, depth, sampling, budget);
  }
  Carpet carpet = std::holds_alternative<BaranskiCarpet>(system)
                      ? Carpet(std::get<BaranskiCarpet>(system))
                      : Carpet(std::get<LGCarpet>(system));
  std::vector<Rect2D> maps;
  for (const AffineMap2D& m : affine_maps(carpet))
    maps.push_back({m.c.val, m.d.val, m.a.val, m.b.val});
  return cloud_2d(maps, depth, sampling, budget);
}

PointCloud harmonic_point_set(int n) {
  if (n < 2) throw input_error("n must be at least 2");
  PointCloud cloud;
  cloud.dimension = 1;
  cloud.xs.reserve(static_cast<std::size_t>(n) + 1);
  cloud.xs.push_back(0.0);
  for (int k = n; k >= 1; --k) cloud.xs.push_back(1.0 / static_cast<double>(k));
  cloud.resolution = 1.0 / static_cast<double>(n);
  return cloud;
}

double weak_tangent_distance(double alpha, double beta, double gamma, int k, double mesh) {
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0) ||
      !(gamma > 0.0 && gamma < 1.0))
    throw input_error("ratios must lie in (0,1)");
  if (k < 1) throw input_error("zoom depth must be at least 1");
  if (!(mesh > 0.0 && mesh < 1.0)) throw input_error("mesh resolution must lie in (0,1)");
  double logInvMesh = std::log(1.0 / mesh);
  int N = static_cast<int>(std::ceil(logInvMesh / std::log(1.0 / beta)));
  int M = static_cast<int>(
      std::ceil((k * std::log(1.0 / beta) + logInvMesh) / std::log(1.0 / alpha)));
  std::vector<double> pts{0.0, 1.0};
  for (int m = 1; m <= M; ++m) {
    double am = std::pow(alpha, m);
    for (int n = -k; n <= N; ++n) {
      double v = am * std::pow(beta, n);
      if (v > 0.0 && v <= 1.0) pts.push_back(v);
    }
  }
  std::sort(pts.begin(), pts.end());
  double maxGap = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    maxGap = std::max(maxGap, pts[i + 1] - pts[i]);
  return maxGap / 2.0;
}

PointCloud scale_shift_cloud(const PointCloud& cloud, double scale, double shift) {
  if (cloud.dimension != 1) throw input_error("cloud transforms expect a 1-D cloud");
  if (!(scale > 0.0)) throw input_error("scale must be positive");
  PointCloud out;
  out.dimension = 1;
  out.xs.reserve(cloud.xs.size());
  for (double x : cloud.xs) out.xs.push_back(scale * x + shift);
  out.resolution = scale * cloud.resolution;
  return out;
}

PointCloud merge_clouds(const PointCloud& a, const PointCloud& b) {
  if (a.dimension != b.dimension) throw input_error("cannot merge clouds of different dimension");
  PointCloud out;
  out.dimension = a.dimension;
  out.xs = a.xs;
  out.xs.insert(out.xs.end(), b.xs.begin(), b.xs.end());
  out.ys = a.ys;
  out.ys.insert(out.ys.end(), b.ys.begin(), b.ys.end());
  out.resolution = std::max(a.resolution, b.resolution);
  sort_dedup(out);
  return out;
}

PointCloud product_cloud(const PointCloud& a, const PointCloud& b) {
  if (a.dimension != 1 || b.dimension != 1)
    throw input_error("product clouds are built from 1-D factors");
  PointCloud out;
  out.dimension = 2;
  out.xs.reserve(a.size() * b.size());
  out.ys.reserve(a.size() * b.size());
  for (double x : a.xs)
    for (double y : b.xs) {
      out.xs.push_back(x);
      out.ys.push_back(y);
    }
  // Max-metric: the product grid is within max(res_a, res_b) of the true product.
  out.resolution = std::max(a.resolution, b.resolution);
  return out;
}

}  // namespace fracdim
