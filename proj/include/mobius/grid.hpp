#pragma once

#include <string>

#include "mobius/errors.hpp"
#include "mobius/strip.hpp"

namespace mobius {

/// Node lattice over the parameter domain.
///
/// r nodes include both edges, r_i = -w + i * 2w / (n_r - 1). theta nodes are
/// periodic over the parametric period, theta_j = j * theta_max / n_theta, so
/// theta_max itself is identified with node 0. Nodes are ordered r-outer,
/// theta-inner: node = i * n_theta + j.
struct Grid {
  int n_r = 0;
  int n_theta = 0;
  double w = 1.0;
  double theta_max = 0.0;

  static Grid over(const StripParams& p, int n_r, int n_theta) {
    Grid g{n_r, n_theta, p.w, p.theta_max()};
    g.validate();
    return g;
  }

  void validate(int min_r = 3, int min_theta = 3) const {
    if (n_r < min_r || n_theta < min_theta)
      throw ConfigError("grid " + std::to_string(n_r) + "x" + std::to_string(n_theta) + " is degenerate; need at least " +
                        std::to_string(min_r) + " r nodes and " + std::to_string(min_theta) + " theta nodes");
  }

  int nodes() const { return n_r * n_theta; }
  int index(int i, int j) const { return i * n_theta + j; }
  double dr() const { return 2.0 * w / double(n_r - 1); }
  double dtheta() const { return theta_max / double(n_theta); }
  double r(int i) const { return i == n_r - 1 ? w : -w + double(i) * dr(); }
  double theta(int j) const { return double(j) * dtheta(); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

}  // namespace mobius
