#pragma once

#include <cstddef>
#include <vector>

#include "fracdim/symbolic.hpp"
#include "fracdim/systems.hpp"

namespace fracdim {

enum class Sampling { FixedPoints, Corners };

// Finite stand-in for an attractor: every attractor point is within
// `resolution` of a cloud point and vice versa. Points are sorted
// lexicographically and deduplicated.
struct PointCloud {
  int dimension = 1;
  std::vector<double> xs;
  std::vector<double> ys;  // parallel to xs when dimension == 2
  double resolution = 0.0;

  std::size_t size() const { return xs.size(); }
};

// Depth-k cylinder sample. FixedPoints anchors each word at its rectangle's
// lower-left corner (resolution = max rectangle diameter); Corners takes all
// four corners (resolution = half of that, since no rectangle point is
// farther than half a diagonal from the nearest corner).
PointCloud point_cloud(const System& system, int depth, Sampling sampling,
                       std::size_t budget = kWordBudget);

// {0} together with {1/k : k = 1..n}.
PointCloud harmonic_point_set(int n);

// Upper bound on the Hausdorff distance between [0,1] and the zoomed point
// family {alpha^m beta^n : m >= 1, n >= -k} truncated at the mesh
// resolution: the largest gap, halved, after adjoining 0 and 1. The third
// ratio only adds points, so the bound stays valid without it.
double weak_tangent_distance(double alpha, double beta, double gamma, int k, double mesh);

// Cloud algebra used by the estimator property suite (1-D inputs).
PointCloud scale_shift_cloud(const PointCloud& cloud, double scale, double shift);
PointCloud merge_clouds(const PointCloud& a, const PointCloud& b);
PointCloud product_cloud(const PointCloud& a, const PointCloud& b);

}  // namespace fracdim
