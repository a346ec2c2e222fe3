#include "mobius/gauge.hpp"

#include <cmath>

namespace mobius {

std::string to_string(FieldSource s) { return s == FieldSource::closed_form ? "closed-form" : "connection-derived"; }

std::string to_string(FieldClass c) {
  switch (c) {
    case FieldClass::monopole_like: return "monopole-like";
    case FieldClass::common: return "common";
    case FieldClass::null: return "null";
    case FieldClass::indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

GaugeFieldGrid sample_gauge(const StripParams& p, const Grid& grid, FieldSource source, double step) {
  p.validate();
  grid.validate();
  if (grid.w != p.w || grid.theta_max != p.theta_max())
    throw ConfigError("grid does not span the strip domain [-w, w] x [0, theta_max)");

  GaugeFieldGrid out;
  out.grid = grid;
  out.source = source;
  out.A_r.resize(grid.n_r, grid.n_theta);
  out.A_s.resize(grid.n_r, grid.n_theta);
  out.arc_scale.resize(grid.n_r, grid.n_theta);
  for (int i = 0; i < grid.n_r; ++i) {
    for (int j = 0; j < grid.n_theta; ++j) {
      const double r = grid.r(i), t = grid.theta(j);
      const auto a = source == FieldSource::closed_form ? gauge_closed(p, r, t) : gauge_connection(p, r, t, step);
      out.A_r(i, j) = a.A_r;
      out.A_s(i, j) = a.A_s;
      out.arc_scale(i, j) = 0.5 * normalizer(p, r, t);
    }
  }
  out.B_n = magnetic_field(out);
  return out;
}

Eigen::ArrayXXd magnetic_field(const GaugeFieldGrid& f) {
  const Grid& g = f.grid;
  g.validate();
  const int nr = g.n_r, nt = g.n_theta;
  if (f.A_r.rows() != nr || f.A_r.cols() != nt || f.A_s.rows() != nr || f.A_s.cols() != nt ||
      f.arc_scale.rows() != nr || f.arc_scale.cols() != nt)
    throw ConfigError("magnetic_field: field arrays do not match the " + std::to_string(nr) + "x" +
                      std::to_string(nt) + " grid");
  const double hr = g.dr(), ht = g.dtheta();

  Eigen::ArrayXXd B(nr, nt);
  for (int j = 0; j < nt; ++j) {
    const int jp = (j + 1) % nt, jm = (j + nt - 1) % nt;
    for (int i = 0; i < nr; ++i) {
      double dAs;
      if (i == 0)
        dAs = (-3.0 * f.A_s(0, j) + 4.0 * f.A_s(1, j) - f.A_s(2, j)) / (2.0 * hr);
      else if (i == nr - 1)
        dAs = (3.0 * f.A_s(i, j) - 4.0 * f.A_s(i - 1, j) + f.A_s(i - 2, j)) / (2.0 * hr);
      else
        dAs = (f.A_s(i + 1, j) - f.A_s(i - 1, j)) / (2.0 * hr);
      const double dAr = (f.A_r(i, jp) - f.A_r(i, jm)) / (2.0 * ht);
      B(i, j) = dAs - dAr / f.arc_scale(i, j);
    }
  }
  return B;
}

double magnetic_field_at(const StripParams& p, double r, double theta, double h) {
  if (!(h > 0.0)) throw DomainError("magnetic_field_at: step must be > 0");
  auto A = [&](double rr, double tt) { return detail::gauge_closed_unchecked<double>(p, rr, tt); };
  double dAs;
  if (r + h > p.w)
    dAs = (3.0 * A(r, theta).A_s - 4.0 * A(r - h, theta).A_s + A(r - 2.0 * h, theta).A_s) / (2.0 * h);
  else if (r - h < -p.w)
    dAs = (-3.0 * A(r, theta).A_s + 4.0 * A(r + h, theta).A_s - A(r + 2.0 * h, theta).A_s) / (2.0 * h);
  else
    dAs = (A(r + h, theta).A_s - A(r - h, theta).A_s) / (2.0 * h);
  const double dAr = (A(r, theta + h).A_r - A(r, theta - h).A_r) / (2.0 * h);
  return dAs - 2.0 * dAr / normalizer(p, r, theta);
}

FieldCharacter field_character(const Eigen::ArrayXXd& B, const Eigen::ArrayXXd& sqrt_g, const Grid& grid,
                               const LinkingNumber& linking) {
  grid.validate();
  if (B.rows() != grid.n_r || B.cols() != grid.n_theta || sqrt_g.rows() != grid.n_r || sqrt_g.cols() != grid.n_theta)
    throw ConfigError("field_character: arrays do not match the grid");

  const double peak = B.abs().maxCoeff();
  const double zero_level = 1e-12 * peak;
  double area = 0.0, pos = 0.0, neg = 0.0, zero = 0.0;
  FieldCharacter c;
  for (int i = 0; i < grid.n_r; ++i) {
    const double wr = (i == 0 || i == grid.n_r - 1) ? 0.5 : 1.0;
    for (int j = 0; j < grid.n_theta; ++j) {
      const double dA = wr * grid.dr() * grid.dtheta() * sqrt_g(i, j);
      const double b = B(i, j);
      area += dA;
      c.flux += b * dA;
      c.abs_flux += std::abs(b) * dA;
      if (std::abs(b) <= zero_level)
        zero += dA;
      else if (b > 0.0)
        pos += dA;
      else
        neg += dA;
    }
  }
  c.positive_fraction = pos / area;
  c.negative_fraction = neg / area;
  c.zero_fraction = zero / area;
  c.dominance = c.abs_flux > 0.0 ? std::abs(c.flux) / c.abs_flux : 0.0;
  c.sides = linking.half_integer() ? 1 : 2;
  if (c.sides == 1)
    c.face_flux = {c.flux};
  else
    c.face_flux = {c.flux, -c.flux};

  if (c.abs_flux < 1e-12)
    c.classification = FieldClass::null;
  else if (c.sides == 1 && c.dominance >= monopole_dominance)
    c.classification = FieldClass::monopole_like;
  else if (c.sides == 2 && c.flux != 0.0)
    c.classification = FieldClass::common;
  else
    c.classification = FieldClass::indeterminate;
  return c;
}

}  // namespace mobius
