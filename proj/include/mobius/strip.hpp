#pragma once

// Twisted-strip embedding and its adapted frame.
//
// The strip is the ruled surface
//
//   x(r, t) = ((R + r cos(k t / 2)) cos t,
//              (R + r cos(k t / 2)) sin t,
//               r sin(k t / 2))
//
// with r in [-w, w] and k the number of half-twists. k = 1 is the Moebius
// strip; odd k are non-orientable and are parametrised over the double cover
// t in [0, 4 pi], even k over t in [0, 2 pi].

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "mobius/errors.hpp"

namespace mobius {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

struct StripParams {
  double R = 4.0;  // midcircle radius
  double w = 1.0;  // half-width
  int twist = 1;   // number of half-twists

  bool orientable() const { return twist % 2 == 0; }

  /// Parametric period in theta: 4 pi for odd twist (double cover), 2 pi otherwise.
  double theta_max() const { return orientable() ? 2.0 * std::numbers::pi : 4.0 * std::numbers::pi; }

  /// Throws DomainError naming the first offending field.
  void validate() const {
    if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("strip.R must be > 0, got " + std::to_string(R));
    if (!(w > 0.0) || !(w < R))
      throw DomainError("strip.w must satisfy 0 < w < R, got w=" + std::to_string(w) + " R=" + std::to_string(R));
    if (twist < 1) throw DomainError("strip.twist must be >= 1, got " + std::to_string(twist));
  }

  friend bool operator==(const StripParams&, const StripParams&) = default;
};

/// Which unit normal the shape operator is measured against.
///
/// right_handed is e_r x e_s; it reproduces the closed-form second fundamental
/// form and Weingarten map. left_handed is the third vector of the frame triad
/// (e_s x e_r), which makes (e_r, e_s, e_n) a left-handed triad.
enum class NormalSide { right_handed, left_handed };

template <typename Scalar = double>
struct FrameTriad {
  Vec3<Scalar> e_r;
  Vec3<Scalar> e_s;
  Vec3<Scalar> e_n;  // triad normal, e_s x e_r
  Scalar N;          // 2 |d x / d theta|

  Vec3<Scalar> normal(NormalSide side) const { return side == NormalSide::left_handed ? e_n : Vec3<Scalar>(-e_n); }
  Scalar triple_product() const { return e_r.dot(e_s.cross(e_n)); }
};

namespace detail {

inline void check_point(const StripParams& p, double r, double theta) {
  const double slack = 1e-12 * std::max(1.0, p.R);
  if (!(std::abs(r) <= p.w + slack))
    throw DomainError("r=" + std::to_string(r) + " outside [-w, w] with w=" + std::to_string(p.w));
  if (!(theta >= -slack && theta <= p.theta_max() + slack))
    throw DomainError("theta=" + std::to_string(theta) + " outside [0, " + std::to_string(p.theta_max()) + "]");
}

template <typename Scalar>
Vec3<Scalar> embed_unchecked(const StripParams& p, Scalar r, Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar half = Scalar(p.twist) * theta / Scalar(2);
  const Scalar rho = Scalar(p.R) + r * cos(half);
  return {rho * cos(theta), rho * sin(theta), r * sin(half)};
}

}  // namespace detail

/// Normaliser N = 2 |d x / d theta|; N^2 = 4 (R + r cos(k t/2))^2 + k^2 r^2.
template <typename Scalar>
Scalar normalizer(const StripParams& p, Scalar r, Scalar theta) {
  using std::cos;
  using std::sqrt;
  const Scalar k = Scalar(p.twist);
  const Scalar rho = Scalar(p.R) + r * cos(k * theta / Scalar(2));
  return sqrt(Scalar(4) * rho * rho + k * k * r * r);
}

template <typename Scalar>
Vec3<Scalar> embed(const StripParams& p, Scalar r, Scalar theta) {
  detail::check_point(p, double(r), double(theta));
  return detail::embed_unchecked(p, r, theta);
}

namespace detail {

template <typename Scalar>
FrameTriad<Scalar> frame_unchecked(const StripParams& p, Scalar r, Scalar theta) {
  using std::cos;
  using std::sin;
  const Scalar k = Scalar(p.twist);
  const Scalar c = cos(k * theta / Scalar(2));
  const Scalar s = sin(k * theta / Scalar(2));
  const Scalar ct = cos(theta);
  const Scalar st = sin(theta);
  const Scalar rho = Scalar(p.R) + r * c;
  const Scalar N = normalizer(p, r, theta);
  const Scalar scale = Scalar(2) / N;
  const Scalar kr2 = k * r / Scalar(2);

  FrameTriad<Scalar> f;
  f.N = N;
  f.e_r = {c * ct, c * st, s};
  f.e_s = scale * Vec3<Scalar>(-kr2 * s * ct - rho * st, -kr2 * s * st + rho * ct, kr2 * c);
  f.e_n = scale * Vec3<Scalar>(s * rho * ct - kr2 * st, s * rho * st + kr2 * ct, -c * rho);
  return f;
}

}  // namespace detail

/// Unit tangents e_r = dx/dr and e_s = (2/N) dx/dtheta, and the triad normal
/// e_n = e_s x e_r. The triad is left-handed everywhere.
template <typename Scalar>
FrameTriad<Scalar> frame(const StripParams& p, Scalar r, Scalar theta) {
  detail::check_point(p, double(r), double(theta));
  return detail::frame_unchecked(p, r, theta);
}

struct Partials {
  Vec3<double> d_r, d_theta;
  Vec3<double> d_rr, d_rtheta, d_thetar, d_thetatheta;
};

/// Default first-derivative step, 1e-5 * max(1, R).
inline double default_step(const StripParams& p) { return 1e-5 * std::max(1.0, p.R); }

/// Finite-difference partials of the embedding, second order in the step.
///
/// First derivatives use `step`; second derivatives use `second_step`, which
/// has to be larger to keep roundoff (eps / h^2) below truncation. Theta
/// stencils are always central (the map is periodic); r stencils turn
/// one-sided when they would leave [-w, w].
inline Partials numeric_partials(const StripParams& p, double r, double theta, double step,
                                 double second_step = 1e-3) {
  if (!(step > 0.0)) throw DomainError("numeric_partials: step must be > 0");
  if (!(second_step > 0.0)) throw DomainError("numeric_partials: second_step must be > 0");
  detail::check_point(p, r, theta);
  auto x = [&](double rr, double tt) { return detail::embed_unchecked<double>(p, rr, tt); };

  // d/dr with a three-point stencil, shifted inward near the edges
  auto d_r = [&](auto&& fn, double rr, double tt, double h) -> Vec3<double> {
    if (rr + h > p.w) return (3.0 * fn(rr, tt) - 4.0 * fn(rr - h, tt) + fn(rr - 2.0 * h, tt)) / (2.0 * h);
    if (rr - h < -p.w) return (-3.0 * fn(rr, tt) + 4.0 * fn(rr + h, tt) - fn(rr + 2.0 * h, tt)) / (2.0 * h);
    return (fn(rr + h, tt) - fn(rr - h, tt)) / (2.0 * h);
  };
  auto d_t = [&](auto&& fn, double rr, double tt, double h) -> Vec3<double> {
    return (fn(rr, tt + h) - fn(rr, tt - h)) / (2.0 * h);
  };

  Partials out;
  out.d_r = d_r(x, r, theta, step);
  out.d_theta = d_t(x, r, theta, step);

  const double h = second_step;
  auto xr = [&](double rr, double tt) { return d_r(x, rr, tt, h); };
  auto xt = [&](double rr, double tt) { return d_t(x, rr, tt, h); };
  out.d_rtheta = d_t(xr, r, theta, h);
  out.d_thetar = d_r(xt, r, theta, h);
  if (r + h > p.w || r - h < -p.w) {
    out.d_rr = d_r(xr, r, theta, h);
  } else {
    out.d_rr = (x(r + h, theta) - 2.0 * x(r, theta) + x(r - h, theta)) / (h * h);
  }
  out.d_thetatheta = (x(r, theta + h) - 2.0 * x(r, theta) + x(r, theta - h)) / (h * h);
  return out;
}

}  // namespace mobius
