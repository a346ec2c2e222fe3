#pragma once

// Frame rotation fields on the strip and their spin-1/2 lift.

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "mobius/errors.hpp"
#include "mobius/geometry.hpp"
#include "mobius/strip.hpp"

namespace mobius {

/// Rows are frame vectors in Cartesian components, so frame = U * (e_x, e_y, e_z)^T.
template <typename Scalar = double>
using RotationMatrix = Mat3<Scalar>;

template <typename Scalar = double>
struct AngleFields {
  Scalar theta_x;  // arcsin(k r / N)
  Scalar theta_y;  // k theta / 2
  Scalar theta_z;  // theta
};

template <typename Scalar = double>
struct EulerFactors {
  RotationMatrix<Scalar> Uz, Uy, Ux;
};

/// Per-point comparison of two rotation fields.
struct RotationDeviation {
  double max_entry = 0.0;  // max |A_ij - B_ij|
  double det_a = 0.0;
  double det_b = 0.0;
  bool first_rows_agree = false;  // |row0(A) - row0(B)| < 1e-10
};

template <typename Scalar>
RotationMatrix<Scalar> dreibein_matrix(const FrameTriad<Scalar>& f) {
  RotationMatrix<Scalar> U;
  U.row(0) = f.e_r.transpose();
  U.row(1) = f.e_s.transpose();
  U.row(2) = f.e_n.transpose();
  return U;
}

template <typename Scalar>
AngleFields<Scalar> angle_fields(const StripParams& p, Scalar r, Scalar theta) {
  using std::asin;
  detail::check_point(p, double(r), double(theta));
  const Scalar k = Scalar(p.twist);
  return {asin(k * r / normalizer(p, r, theta)), k * theta / Scalar(2), theta};
}

/// The three elementary rotations, with cos(theta_x) = 2(R + r cos(kt/2))/N and
/// sin(theta_x) = k r / N taken in closed form rather than via arcsin.
template <typename Scalar>
EulerFactors<Scalar> euler_rotations(const StripParams& p, Scalar r, Scalar theta) {
  using std::cos;
  using std::sin;
  detail::check_point(p, double(r), double(theta));
  const Scalar k = Scalar(p.twist);
  const Scalar N = normalizer(p, r, theta);
  const Scalar cz = cos(theta), sz = sin(theta);
  const Scalar cy = cos(k * theta / Scalar(2)), sy = sin(k * theta / Scalar(2));
  const Scalar cx = Scalar(2) * (Scalar(p.R) + r * cy) / N;
  const Scalar sx = k * r / N;

  EulerFactors<Scalar> out;
  out.Uz << cz, sz, Scalar(0), -sz, cz, Scalar(0), Scalar(0), Scalar(0), Scalar(1);
  out.Uy << cy, Scalar(0), -sy, Scalar(0), Scalar(1), Scalar(0), sy, Scalar(0), cy;
  out.Ux << Scalar(1), Scalar(0), Scalar(0), Scalar(0), cx, sx, Scalar(0), -sx, cx;
  return out;
}

template <typename Scalar>
RotationMatrix<Scalar> compose_rotation(const StripParams& p, Scalar r, Scalar theta) {
  const auto e = euler_rotations(p, r, theta);
  return e.Ux * e.Uy * e.Uz;
}

namespace detail {
template <typename Scalar>
RotationMatrix<Scalar> canonical_rotation_unchecked(const StripParams& p, Scalar r, Scalar theta) {
  const auto f = frame_unchecked(p, r, theta);
  RotationMatrix<Scalar> U;
  U.row(0) = f.e_r.transpose();
  U.row(1) = f.e_s.transpose();
  U.row(2) = f.e_r.cross(f.e_s).transpose();
  return U;
}
}  // namespace detail

/// Rows e_r, e_s, e_r x e_s: a proper rotation field, smooth in theta.
template <typename Scalar>
RotationMatrix<Scalar> canonical_rotation(const StripParams& p, Scalar r, Scalar theta) {
  detail::check_point(p, double(r), double(theta));
  return detail::canonical_rotation_unchecked(p, r, theta);
}

template <typename DerivedA, typename DerivedB>
RotationDeviation compare_rotations(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  RotationDeviation d;
  d.max_entry = double((a - b).cwiseAbs().maxCoeff());
  d.det_a = double(a.determinant());
  d.det_b = double(b.determinant());
  d.first_rows_agree = double((a.row(0) - b.row(0)).norm()) < 1e-10;
  return d;
}

/// Dreibein matrix against the Ux Uy Uz product at one point.
inline RotationDeviation dreibein_vs_composition(const StripParams& p, double r, double theta) {
  return compare_rotations(dreibein_matrix(frame(p, r, theta)), compose_rotation(p, r, theta));
}

// ---------------------------------------------------------------------------
// Spin lift

/// SU(2) preimage of a proper rotation. `branch` is +1 when the rotor equals
/// the principal preimage (non-negative quaternion scalar part) and -1 when
/// it is its negative.
struct SpinRotor {
  Eigen::Matrix2cd u;
  int branch = +1;
};

namespace detail {

inline Eigen::Matrix2cd rotor_from_quaternion(const Eigen::Quaterniond& q) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << C(q.w()) - i * q.z(), -i * q.x() - C(q.y()),
       -i * q.x() + C(q.y()), C(q.w()) + i * q.z();
  return u;
}

inline Eigen::Quaterniond principal_quaternion(const Eigen::Matrix3d& U) {
  // The frame rows are the images of the basis vectors, so the active rotation is U^T.
  Eigen::Quaterniond q(Eigen::Matrix3d(U.transpose()));
  q.normalize();
  if (q.w() < 0.0 || (q.w() == 0.0 && q.vec().sum() < 0.0)) q.coeffs() *= -1.0;
  return q;
}

}  // namespace detail

/// Adjoint projection SU(2) -> SO(3), R_ab = Tr(sigma_a u sigma_b u^dagger) / 2,
/// returned in the row convention of the frame matrices.
inline Eigen::Matrix3d project_rotor(const Eigen::Matrix2cd& u) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  std::array<Eigen::Matrix2cd, 3> s;
  s[0] << 0, 1, 1, 0;
  s[1] << 0, -i, i, 0;
  s[2] << 1, 0, 0, -1;
  Eigen::Matrix3d active;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) active(a, b) = 0.5 * (s[a] * u * s[b] * u.adjoint()).trace().real();
  return active.transpose();
}

inline SpinRotor spin_lift(const Eigen::Matrix3d& U) {
  const double det = U.determinant();
  if (!(det > 0.0))
    throw DomainError("spin_lift: rotation has det=" + std::to_string(det) + "; only proper rotations lift to SU(2)");
  return {detail::rotor_from_quaternion(detail::principal_quaternion(U)), +1};
}

/// Preimage of U closest (Frobenius) to `previous`, so that a sampled path
/// lifts continuously.
inline SpinRotor spin_lift(const Eigen::Matrix3d& U, const SpinRotor& previous) {
  SpinRotor principal = spin_lift(U);
  const double keep = (principal.u - previous.u).norm();
  const double flip = (principal.u + previous.u).norm();
  if (flip < keep) {
    principal.u = -principal.u;
    principal.branch = -1;
  }
  return principal;
}

/// Lifts a sampled rotation path, seeding with the preimage nearest `seed`.
inline std::vector<SpinRotor> lift_path(std::span<const Eigen::Matrix3d> path,
                                        const SpinRotor& seed = {Eigen::Matrix2cd::Identity(), +1}) {
  std::vector<SpinRotor> out;
  out.reserve(path.size());
  SpinRotor prev = seed;
  for (const auto& U : path) {
    prev = spin_lift(U, prev);
    out.push_back(prev);
  }
  return out;
}

/// Canonical-frame rotor transported along theta at fixed r, sampled at
/// `samples` + 1 equally spaced points over the full parametric period.
inline std::vector<SpinRotor> lift_theta_loop(const StripParams& p, double r, int samples) {
  std::vector<Eigen::Matrix3d> path;
  path.reserve(samples + 1);
  for (int i = 0; i <= samples; ++i)
    path.push_back(canonical_rotation(p, r, p.theta_max() * double(i) / double(samples)));
  // Seed from the principal lift of the starting frame so the path starts on branch +.
  return lift_path(path, spin_lift(path.front()));
}

/// Sign the transported rotor picks up over one parametric period: the loop
/// winds theta_max / 2pi times about the axis and k theta_max / 4pi times in
/// the twist, and SO(3) loops lift to -1 for an odd total.
inline int holonomy_sign(const StripParams& p) {
  const int axial = p.orientable() ? 1 : 2;
  const int twist_turns = p.orientable() ? p.twist / 2 : p.twist;
  return (axial + twist_turns) % 2 == 0 ? +1 : -1;
}

}  // namespace mobius
