#pragma once

// Sine discrete variable representation on a hard-wall box.  The DVR basis
// functions are the particle-in-a-box sines; local potentials are diagonal on
// the grid and the kinetic matrix is known in closed (spectral) form.

#include <cmath>
#include <stdexcept>
#include <string>

#include "bfmix/types.hpp"

namespace bfmix {

struct GridSpec {
  int n_points = 475;
  double x_minus = -19.0 * M_PI / 2.0;
  double x_plus = 19.0 * M_PI / 2.0;
};

class Grid {
 public:
  explicit Grid(const GridSpec& spec) : spec_(spec) {
    if (spec.n_points < 2)
      throw std::invalid_argument("Grid: n_points must be >= 2");
    if (!(spec.x_minus < spec.x_plus))
      throw std::invalid_argument("Grid: requires x_minus < x_plus");
    length_ = spec.x_plus - spec.x_minus;
    dx_ = length_ / static_cast<double>(spec.n_points + 1);
    points_.resize(spec.n_points);
    for (int j = 0; j < spec.n_points; ++j)
      points_[j] = spec.x_minus + (j + 1) * dx_;
  }

  const GridSpec& spec() const { return spec_; }
  int n() const { return spec_.n_points; }
  double dx() const { return dx_; }
  double length() const { return length_; }
  const Vec& points() const { return points_; }

  // -(1/2m) d^2/dx^2 in the sine DVR, assembled from its exact spectral
  // decomposition: eigenvalues n^2 pi^2 / (2 m L^2), eigenvectors the
  // sine-transform columns.
  Mat kinetic_matrix(double mass) const {
    if (mass <= 0.0) throw std::invalid_argument("kinetic_matrix: mass <= 0");
    const int n = spec_.n_points;
    Mat u(n, n);
    const double norm = std::sqrt(2.0 / (n + 1));
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        u(j, k) = norm * std::sin((j + 1) * (k + 1) * M_PI / (n + 1));
    Vec ev(n);
    for (int k = 0; k < n; ++k) {
      const double kn = (k + 1) * M_PI / length_;
      ev[k] = kn * kn / (2.0 * mass);
    }
    Mat t = u * ev.asDiagonal() * u.transpose();
    // symmetrize away the O(eps) asymmetry of the triple product
    return 0.5 * (t + t.transpose());
  }

  double integrate(const Vec& samples) const {
    if (samples.size() != spec_.n_points)
      throw std::invalid_argument("integrate: sample length " +
                                  std::to_string(samples.size()) +
                                  " != n_points");
    return dx_ * samples.sum();
  }

 private:
  GridSpec spec_;
  double dx_ = 0.0;
  double length_ = 0.0;
  Vec points_;
};

}  // namespace bfmix
