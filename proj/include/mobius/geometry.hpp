#pragma once

// Fundamental forms, shape operator and curvatures of the strip, plus the
// metric of its tubular neighbourhood. Closed forms are written for general
// twist k; at k = 1 they are the familiar Moebius expressions
//   g = diag(1, N^2/4),  h = [[0, R/N], [R/N, (N^2 + r^2) sin(t/2) / (2N)]],
//   K = -4 R^2 / N^4.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "mobius/errors.hpp"
#include "mobius/strip.hpp"

namespace mobius {

template <typename Scalar>
using Mat2 = Eigen::Matrix<Scalar, 2, 2>;
template <typename Scalar>
using Mat3 = Eigen::Matrix<Scalar, 3, 3>;

template <typename Scalar = double>
struct FirstForm {
  Mat2<Scalar> g;
  Scalar det;
  Mat2<Scalar> inv;
};

template <typename Scalar = double>
struct Curvatures {
  Scalar mean;   // (1/2) Tr(alpha)
  Scalar gauss;  // det(alpha)
};

template <typename Scalar = double>
struct Rescaling {
  Scalar f;                 // 1 + Tr(alpha) q3 + det(alpha) q3^2
  Scalar sqrt_approx;       // first-order f^{+1/2} = 1 + Tr(alpha) q3 / 2
  Scalar inv_sqrt_approx;   // first-order f^{-1/2} = 1 - Tr(alpha) q3 / 2
};

template <typename Scalar = double>
struct Metric3D {
  Mat3<Scalar> G;
  Scalar det;
};

/// Everything the shape operator gives at one point.
template <typename Scalar = double>
struct FundamentalForms {
  FirstForm<Scalar> first;
  Mat2<Scalar> h;
  Mat2<Scalar> alpha;
  Curvatures<Scalar> curvature;
};

template <typename Scalar>
FirstForm<Scalar> first_fundamental(const StripParams& p, Scalar r, Scalar theta) {
  detail::check_point(p, double(r), double(theta));
  const Scalar N = normalizer(p, r, theta);
  const Scalar gtt = N * N / Scalar(4);
  FirstForm<Scalar> out;
  out.g << Scalar(1), Scalar(0), Scalar(0), gtt;
  out.det = gtt;
  out.inv << Scalar(1), Scalar(0), Scalar(0), Scalar(1) / gtt;
  return out;
}

template <typename Scalar>
Mat2<Scalar> second_fundamental(const StripParams& p, Scalar r, Scalar theta,
                                NormalSide side = NormalSide::right_handed) {
  using std::sin;
  detail::check_point(p, double(r), double(theta));
  const Scalar k = Scalar(p.twist);
  const Scalar N = normalizer(p, r, theta);
  const Scalar off = k * Scalar(p.R) / N;
  const Scalar tt = (N * N + k * k * r * r) * sin(k * theta / Scalar(2)) / (Scalar(2) * N);
  Mat2<Scalar> h;
  h << Scalar(0), off, off, tt;
  return side == NormalSide::right_handed ? h : Mat2<Scalar>(-h);
}

/// Shape operator alpha_a^b = -h_ac g^cb.
template <typename Derived1, typename Derived2>
auto weingarten(const Eigen::MatrixBase<Derived1>& g, const Eigen::MatrixBase<Derived2>& h) {
  using Scalar = typename Derived1::Scalar;
  const Scalar det = g.determinant();
  if (!(det > Scalar(0)) || !std::isfinite(double(det)))
    throw InvariantError("weingarten: metric is not positive definite (det=" + std::to_string(double(det)) + ")");
  return Mat2<Scalar>(-(h * g.inverse()));
}

/// Closed form of the shape operator:
/// [[0, -4kR/N^3], [-kR/N, -2 (N^2 + k^2 r^2) sin(kt/2) / N^3]].
template <typename Scalar>
Mat2<Scalar> weingarten_closed(const StripParams& p, Scalar r, Scalar theta,
                               NormalSide side = NormalSide::right_handed) {
  using std::sin;
  detail::check_point(p, double(r), double(theta));
  const Scalar k = Scalar(p.twist);
  const Scalar R = Scalar(p.R);
  const Scalar N = normalizer(p, r, theta);
  const Scalar N3 = N * N * N;
  Mat2<Scalar> a;
  a << Scalar(0), -Scalar(4) * k * R / N3, -k * R / N,
      -Scalar(2) * (N * N + k * k * r * r) * sin(k * theta / Scalar(2)) / N3;
  return side == NormalSide::right_handed ? a : Mat2<Scalar>(-a);
}

template <typename Derived>
auto curvatures(const Eigen::MatrixBase<Derived>& alpha) {
  using Scalar = typename Derived::Scalar;
  return Curvatures<Scalar>{alpha.trace() / Scalar(2), alpha.determinant()};
}

/// K = -4 k^2 R^2 / N^4, independent of the normal side.
template <typename Scalar>
Scalar gaussian_curvature_closed(const StripParams& p, Scalar r, Scalar theta) {
  const Scalar N = normalizer(p, r, theta);
  const Scalar k = Scalar(p.twist);
  return -Scalar(4) * k * k * Scalar(p.R) * Scalar(p.R) / (N * N * N * N);
}

/// Mean curvature with the sign used in the commonly printed form,
/// +(N^2 + k^2 r^2) sin(kt/2) / N^3. Half the trace of the right-handed
/// shape operator is the negative of this; callers compare the two.
template <typename Scalar>
Scalar mean_curvature_printed(const StripParams& p, Scalar r, Scalar theta) {
  using std::sin;
  const Scalar N = normalizer(p, r, theta);
  const Scalar k = Scalar(p.twist);
  return (N * N + k * k * r * r) * sin(k * theta / Scalar(2)) / (N * N * N);
}

template <typename Scalar>
FundamentalForms<Scalar> fundamental_forms(const StripParams& p, Scalar r, Scalar theta,
                                           NormalSide side = NormalSide::right_handed) {
  FundamentalForms<Scalar> out;
  out.first = first_fundamental(p, r, theta);
  out.h = second_fundamental(p, r, theta, side);
  out.alpha = weingarten(out.first.g, out.h);
  out.curvature = curvatures(out.alpha);
  return out;
}

/// Largest |eigenvalue| of a real 2x2 matrix.
template <typename Derived>
auto spectral_radius(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  using std::sqrt;
  const Scalar tr = a.trace();
  const Scalar det = a.determinant();
  const Scalar disc = tr * tr / Scalar(4) - det;
  if (disc >= Scalar(0)) {
    const Scalar root = sqrt(disc);
    return std::max(abs(tr / Scalar(2) + root), abs(tr / Scalar(2) - root));
  }
  return sqrt(det);  // complex pair, |lambda|^2 = det
}

/// Largest |q3| accepted by rescale/metric3d: half the smallest radius of curvature.
template <typename Derived>
auto q3_bound(const Eigen::MatrixBase<Derived>& alpha) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = spectral_radius(alpha);
  return rho > Scalar(0) ? Scalar(0.5) / rho : std::numeric_limits<Scalar>::infinity();
}

namespace detail {
template <typename Derived, typename Scalar>
void check_q3(const Eigen::MatrixBase<Derived>& alpha, Scalar q3) {
  using std::abs;
  const auto bound = q3_bound(alpha);
  if (!(abs(q3) < bound))
    throw RangeError("q3=" + std::to_string(double(q3)) + " outside validity bound |q3| < " +
                     std::to_string(double(bound)));
}
}  // namespace detail

template <typename Derived>
auto rescale(const Eigen::MatrixBase<Derived>& alpha, typename Derived::Scalar q3) {
  using Scalar = typename Derived::Scalar;
  detail::check_q3(alpha, q3);
  const Scalar tr = alpha.trace();
  Rescaling<Scalar> out;
  out.f = Scalar(1) + tr * q3 + alpha.determinant() * q3 * q3;
  if (!(out.f > Scalar(0))) throw RangeError("rescale: f <= 0 at q3=" + std::to_string(double(q3)));
  out.sqrt_approx = Scalar(1) + tr * q3 / Scalar(2);
  out.inv_sqrt_approx = Scalar(1) - tr * q3 / Scalar(2);
  return out;
}

/// G_ab = g + (alpha g + g^T alpha^T) q3 + (alpha g alpha^T) q3^2, G_33 = 1.
template <typename DerivedG, typename DerivedA>
auto metric3d(const Eigen::MatrixBase<DerivedG>& g, const Eigen::MatrixBase<DerivedA>& alpha,
              typename DerivedG::Scalar q3) {
  using Scalar = typename DerivedG::Scalar;
  detail::check_q3(alpha, q3);
  const Mat2<Scalar> ag = alpha * g;
  const Mat2<Scalar> tangent = g + (ag + g.transpose() * alpha.transpose()) * q3 + (ag * alpha.transpose()) * (q3 * q3);
  Metric3D<Scalar> out;
  out.G.setZero();
  out.G.template topLeftCorner<2, 2>() = tangent;
  out.G(2, 2) = Scalar(1);
  out.det = out.G.determinant();
  return out;
}

template <typename Scalar>
Vec3<Scalar> embed_offset(const StripParams& p, Scalar r, Scalar theta, Scalar q3,
                          NormalSide side = NormalSide::right_handed) {
  const auto alpha = weingarten_closed(p, r, theta, side);
  detail::check_q3(alpha, q3);
  const auto f = frame(p, r, theta);
  return detail::embed_unchecked(p, r, theta) + q3 * f.normal(side);
}

/// g, h and alpha from finite-difference partials of the embedding alone.
struct NumericForms {
  Mat2<double> g;
  Mat2<double> h;
  Mat2<double> alpha;
};

inline NumericForms numeric_forms(const StripParams& p, double r, double theta, double step,
                                  double second_step = 1e-3, NormalSide side = NormalSide::right_handed) {
  const Partials d = numeric_partials(p, r, theta, step, second_step);
  Vec3<double> n = d.d_r.cross(d.d_theta).normalized();
  if (side == NormalSide::left_handed) n = -n;
  NumericForms out;
  out.g << d.d_r.dot(d.d_r), d.d_r.dot(d.d_theta), d.d_theta.dot(d.d_r), d.d_theta.dot(d.d_theta);
  const double h_rt = 0.5 * (d.d_rtheta + d.d_thetar).dot(n);
  out.h << d.d_rr.dot(n), h_rt, h_rt, d.d_thetatheta.dot(n);
  out.alpha = weingarten(out.g, out.h);
  return out;
}

}  // namespace mobius
