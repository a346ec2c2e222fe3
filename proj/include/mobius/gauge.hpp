#pragma once

// Geometric gauge potential, its curl B_n, and the field classification.
//
// s-derivatives are arc-length derivatives, d/ds = (2/N) d/dtheta.

#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mobius/errors.hpp"
#include "mobius/frames.hpp"
#include "mobius/grid.hpp"
#include "mobius/strip.hpp"

namespace mobius {

template <typename Scalar = double>
struct GaugePotential {
  Scalar A_r;
  Scalar A_s;
};

namespace detail {

template <typename Scalar>
GaugePotential<Scalar> gauge_closed_unchecked(const StripParams& p, Scalar r, Scalar theta) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Scalar k = Scalar(p.twist);
  const Scalar c = cos(k * theta / Scalar(2));
  const Scalar s = sin(k * theta / Scalar(2));
  const Scalar rho = Scalar(p.R) + r * c;
  const Scalar N = normalizer(p, r, theta);
  const Scalar sx = k * r / N;
  const Scalar cx = Scalar(2) * rho / N;
  // sqrt(N^2 - k^2 r^2) = 2 |R + r cos(kt/2)|
  const Scalar root = Scalar(2) * abs(rho);

  GaugePotential<Scalar> a;
  a.A_r = Scalar(2) * k * Scalar(p.R) / (N * N);
  a.A_s = s * s * sx * sx * (cos(theta) * cx * cx + c * Scalar(2) * sx * cx) / root +
          ((sin(theta) * s + Scalar(2) * c) * cx - cos(theta) * sx) / N;
  return a;
}

}  // namespace detail

/// Closed-form potential. A_r = 2kR/N^2 is d/dr arcsin(k r / N); A_s is the
/// k = 1 expression with theta/2 -> k theta/2 and sqrt(N^2 - r^2) -> 2 abs(P).
template <typename Scalar>
GaugePotential<Scalar> gauge_closed(const StripParams& p, Scalar r, Scalar theta) {
  detail::check_point(p, double(r), double(theta));
  return detail::gauge_closed_unchecked(p, r, theta);
}

/// Omega_a = (d_a U) U^T for the canonical rotation, a = r, s. Central
/// differences; the r stencil goes one-sided within `step` of the edges.
inline std::array<Eigen::Matrix3d, 2> frame_connection(const StripParams& p, double r, double theta, double step) {
  if (!(step > 0.0)) throw DomainError("frame_connection: step must be > 0, got " + std::to_string(step));
  detail::check_point(p, r, theta);
  auto U = [&](double rr, double tt) { return detail::canonical_rotation_unchecked<double>(p, rr, tt); };
  const Eigen::Matrix3d U0 = U(r, theta);
  const double h = step;

  Eigen::Matrix3d dr;
  if (r + h > p.w)
    dr = (3.0 * U0 - 4.0 * U(r - h, theta) + U(r - 2.0 * h, theta)) / (2.0 * h);
  else if (r - h < -p.w)
    dr = (-3.0 * U0 + 4.0 * U(r + h, theta) - U(r + 2.0 * h, theta)) / (2.0 * h);
  else
    dr = (U(r + h, theta) - U(r - h, theta)) / (2.0 * h);
  const Eigen::Matrix3d dt = (U(r, theta + h) - U(r, theta - h)) / (2.0 * h);

  const double ds = 2.0 / normalizer(p, r, theta);
  return {dr * U0.transpose(), ds * dt * U0.transpose()};
}

/// Rotation rate of the tangent frame about the normal, (Omega_a)_12.
inline GaugePotential<double> gauge_connection(const StripParams& p, double r, double theta, double step) {
  const auto omega = frame_connection(p, r, theta, step);
  return {omega[0](0, 1), omega[1](0, 1)};
}

// ---------------------------------------------------------------------------
// Grid fields

enum class FieldSource { closed_form, connection };

std::string to_string(FieldSource s);

/// Per-node fields, arrays shaped n_r x n_theta.
struct GaugeFieldGrid {
  Grid grid;
  Eigen::ArrayXXd A_r;
  Eigen::ArrayXXd A_s;
  Eigen::ArrayXXd B_n;
  Eigen::ArrayXXd arc_scale;  // N/2, which is also sqrt(det g)
  FieldSource source = FieldSource::closed_form;
};

/// Samples A on the grid and fills B_n. `step` is only used for the connection source.
GaugeFieldGrid sample_gauge(const StripParams& p, const Grid& grid, FieldSource source = FieldSource::closed_form,
                            double step = 1e-5);

/// B_n = d_r A_s - (1/arc_scale) d_theta A_r. Central differences, periodic in
/// theta, second-order one-sided at r = +-w.
Eigen::ArrayXXd magnetic_field(const GaugeFieldGrid& fields);

/// Pointwise curl of the closed-form potential with central step h; theta is
/// not range-checked, so it can probe periodicity.
double magnetic_field_at(const StripParams& p, double r, double theta, double h = 1e-4);

struct LinkingNumber {
  int numerator = 1;
  int denominator = 2;

  double value() const { return double(numerator) / double(denominator); }
  bool half_integer() const { return denominator == 2; }
  std::string to_string() const {
    return denominator == 1 ? std::to_string(numerator) : std::to_string(numerator) + "/" + std::to_string(denominator);
  }
  friend bool operator==(const LinkingNumber&, const LinkingNumber&) = default;
};

inline LinkingNumber linking_number(const StripParams& p) {
  const int g = std::gcd(p.twist, 2);
  return {p.twist / g, 2 / g};
}

enum class FieldClass { monopole_like, common, null, indeterminate };

std::string to_string(FieldClass c);

/// Sign distribution and flux of B_n over the strip.
///
/// Fractions and fluxes are area-weighted with sqrt(g) dr dtheta (trapezoid in
/// r). A half-integer linking number means one side, covered twice by the
/// parametrisation; otherwise the strip has two faces seeing B_n and -B_n.
/// One side with dominance |flux| / abs_flux >= 0.5 is monopole-like; two
/// faces with opposite nonzero fluxes are common; abs_flux < 1e-12 is null.
struct FieldCharacter {
  double positive_fraction = 0.0;
  double negative_fraction = 0.0;
  double zero_fraction = 0.0;
  double flux = 0.0;
  double abs_flux = 0.0;
  double dominance = 0.0;
  int sides = 1;
  std::vector<double> face_flux;
  FieldClass classification = FieldClass::null;
};

inline constexpr double monopole_dominance = 0.5;

FieldCharacter field_character(const Eigen::ArrayXXd& B_n, const Eigen::ArrayXXd& sqrt_g, const Grid& grid,
                               const LinkingNumber& linking);

inline FieldCharacter field_character(const GaugeFieldGrid& fields, const LinkingNumber& linking) {
  return field_character(fields.B_n, fields.arc_scale, fields.grid, linking);
}

}  // namespace mobius
