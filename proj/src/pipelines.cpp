#include "mobius/pipelines.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mobius/dirac.hpp"
#include "mobius/errors.hpp"
#include "mobius/frames.hpp"
#include "mobius/gauge.hpp"
#include "mobius/geometry.hpp"
#include "mobius/grid.hpp"

namespace mobius {

namespace {

Grid config_grid(const RunConfig& c) {
  c.strip.validate();
  return Grid::over(c.strip, c.n_r, c.n_theta);
}

double rounded(const RunConfig& c, double v) { return round_significant(v, c.precision); }

}  // namespace

Artifact cmd_geometry(const RunConfig& c) {
  validate(c);
  const Grid g = config_grid(c);
  Artifact a;
  a.table.columns = {"r", "theta", "K", "M", "m_eff", "g_det"};
  for (int i = 0; i < g.n_r; ++i)
    for (int j = 0; j < g.n_theta; ++j) {
      const double r = g.r(i), t = g.theta(j);
      const auto forms = fundamental_forms(c.strip, r, t);
      const double m_eff = c.printed_mass_sign ? -forms.curvature.mean : forms.curvature.mean;
      a.table.add_row({r, t, gaussian_curvature_closed(c.strip, r, t), mean_curvature_printed(c.strip, r, t), m_eff,
                       forms.first.det});
    }
  a.summaries["columns"] = column_summary(a.table, c.precision);
  a.summaries["rows"] = g.nodes();
  return a;
}

Artifact cmd_gauge(const RunConfig& c) {
  validate(c);
  const Grid g = config_grid(c);
  const GaugeFieldGrid closed = sample_gauge(c.strip, g, FieldSource::closed_form);
  const GaugeFieldGrid conn = sample_gauge(c.strip, g, FieldSource::connection);
  Artifact a;
  a.table.columns = {"r", "theta", "A_r", "A_s", "B_n", "A_r_conn", "A_s_conn", "B_n_conn"};
  for (int i = 0; i < g.n_r; ++i)
    for (int j = 0; j < g.n_theta; ++j)
      a.table.add_row({g.r(i), g.theta(j), closed.A_r(i, j), closed.A_s(i, j), closed.B_n(i, j), conn.A_r(i, j),
                       conn.A_s(i, j), conn.B_n(i, j)});

  const LinkingNumber link = linking_number(c.strip);
  auto character_json = [&](const FieldCharacter& fc) {
    nlohmann::json j;
    j["classification"] = to_string(fc.classification);
    j["positive_fraction"] = rounded(c, fc.positive_fraction);
    j["negative_fraction"] = rounded(c, fc.negative_fraction);
    j["zero_fraction"] = rounded(c, fc.zero_fraction);
    j["flux"] = rounded(c, fc.flux);
    j["abs_flux"] = rounded(c, fc.abs_flux);
    j["dominance"] = rounded(c, fc.dominance);
    j["sides"] = fc.sides;
    nlohmann::json faces = nlohmann::json::array();
    for (double f : fc.face_flux) faces.push_back(rounded(c, f));
    j["face_flux"] = faces;
    return j;
  };
  a.summaries["linking_number"] = link.to_string();
  a.summaries["field_character"] = character_json(field_character(closed, link));
  a.summaries["field_character_connection"] = character_json(field_character(conn, link));
  a.summaries["closed_vs_connection"] = {
      {"kind", "soft"},
      {"max_abs_A_r", rounded(c, (closed.A_r - conn.A_r).abs().maxCoeff())},
      {"max_abs_A_s", rounded(c, (closed.A_s - conn.A_s).abs().maxCoeff())}};
  a.summaries["columns"] = column_summary(a.table, c.precision);
  a.summaries["rows"] = g.nodes();
  return a;
}

std::vector<double> flat_dispersion(int n_r, int n_theta, double h_r, double h_theta, double mass, double wilson) {
  std::vector<double> out;
  out.reserve(std::size_t(2 * n_r * n_theta));
  for (int a = 0; a < n_r; ++a)
    for (int b = 0; b < n_theta; ++b) {
      const double pr = 2.0 * std::numbers::pi * a / n_r, pt = 2.0 * std::numbers::pi * b / n_theta;
      const double W = 0.5 * wilson * ((2.0 - 2.0 * std::cos(pr)) / h_r + (2.0 - 2.0 * std::cos(pt)) / h_theta);
      const double sr = std::sin(pr) / h_r, st = std::sin(pt) / h_theta;
      const double E = std::sqrt(sr * sr + st * st + (mass + W) * (mass + W));
      out.push_back(E);
      out.push_back(-E);
    }
  std::sort(out.begin(), out.end());
  return out;
}

Artifact cmd_spectrum(const RunConfig& c) {
  validate(c);
  std::vector<int> sectors;
  if (c.sectors != SectorSelection::minus) sectors.push_back(+1);
  if (c.sectors != SectorSelection::plus) sectors.push_back(-1);

  DiracOptions opt;
  opt.wilson = c.wilson;
  opt.printed_mass_sign = c.printed_mass_sign;
  opt.dense_cap = c.dense_cap;
  const int dim = 2 * c.n_r * c.n_theta;
  if (dim > c.dense_cap)
    throw ConfigError("operator dimension " + std::to_string(dim) + " exceeds physics.dense_cap=" +
                      std::to_string(c.dense_cap) + "; reduce grid.n_r or grid.n_theta");

  std::vector<Spectrum> spectra;
  Artifact a;
  a.summaries["representation"] = {{"gamma_r", "sigma_x"}, {"gamma_theta", "s3*sigma_y"}, {"gamma_mass", "sigma_z"},
                                   {"basis", "sqrt(sqrt(g)) * psi"}};
  nlohmann::json herm = nlohmann::json::object();
  for (int s : sectors) {
    DiracGridOperator op;
    if (c.flat_control) {
      op = assemble_flat(c.n_r, c.n_theta, 1.0, 1.0, true, s, c.mass, c.wilson);
      op.options.dense_cap = c.dense_cap;
    } else {
      op = assemble(c.strip, config_grid(c), s, c.mass, opt);
    }
    herm[s > 0 ? "plus" : "minus"] = op.hermiticity_error;
    spectra.push_back(spectrum(op, c.count));
  }
  a.summaries["hermiticity"] = herm;

  a.table.columns = {"sector", "index", "E", "mean_r", "edge_fraction", "current", "deck_overlap"};
  for (const auto& sp : spectra)
    for (int k = 0; k < sp.size(); ++k)
      a.table.add_row({(long long)sp.sector, (long long)k, sp.energies(k), sp.mean_r(k), sp.edge_fraction(k),
                       sp.current(k), sp.deck_overlap(k)});

  if (spectra.size() == 2) {
    const PairingReport pr = sector_pairing(spectra[0], spectra[1]);
    a.summaries["sector_pairing"] = {{"pairs", pr.pairs},
                                     {"max_gap", pr.max_gap},
                                     {"tolerance", pr.tolerance},
                                     {"degenerate", pr.degenerate}};
    try {
      const SpinHallReport sh = spin_hall_diagnostics(spectra[0], spectra[1], c.energy_window);
      a.summaries["spin_hall"] = {{"window", sh.window},
                                  {"states", sh.rows.size()},
                                  {"pairs", sh.pairs},
                                  {"sector_r_correlation", rounded(c, sh.sector_r_correlation)},
                                  {"current_correlation", rounded(c, sh.current_correlation)},
                                  {"paired_r_correlation", rounded(c, sh.paired_r_correlation)}};
    } catch (const UsageError& e) {
      a.summaries["spin_hall"] = {{"window", c.energy_window}, {"error", e.what()}};
    }
  }

  if (c.flat_control) {
    const auto exact = flat_dispersion(c.n_r, c.n_theta, 1.0, 1.0, c.mass, c.wilson);
    std::vector<double> exact_abs;
    for (double e : exact) exact_abs.push_back(std::abs(e));
    std::sort(exact_abs.begin(), exact_abs.end());
    double worst = 0.0;
    for (const auto& sp : spectra) {
      std::vector<double> got;
      for (int k = 0; k < sp.size(); ++k) got.push_back(std::abs(sp.energies(k)));
      std::sort(got.begin(), got.end());
      for (std::size_t k = 0; k < got.size(); ++k) worst = std::max(worst, std::abs(got[k] - exact_abs[k]));
    }
    a.summaries["flat_dispersion_max_deviation"] = worst;
  }
  return a;
}

// ---------------------------------------------------------------------------
// validate

namespace {

struct CheckList {
  Table table;
  bool hard_failure = false;

  CheckList() { table.columns = {"check", "kind", "measured", "tolerance", "status"}; }

  void hard(const std::string& name, double measured, double tol) {
    const bool ok = std::isfinite(measured) && measured <= tol;
    if (!ok) hard_failure = true;
    table.add_row({name, std::string("hard"), measured, tol, std::string(ok ? "pass" : "fail")});
  }
  void soft(const std::string& name, double measured) {
    table.add_row({name, std::string("soft"), measured, std::nan(""), std::string("report")});
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

Artifact cmd_validate(const RunConfig& c) {
  validate(c);
  const StripParams& p = c.strip;
  const Grid g = config_grid(c);
  const double step = default_step(p);

  double ortho = 0.0, triple_min = 1e300, triple_max = -1e300;
  double g_err = 0.0, h_err = 0.0, a_err = 0.0, k_err = 0.0, metric_err = 0.0, ar_err = 0.0, period_err = 0.0;
  double m_diff = 0.0, m_sum = 0.0, dreibein_dev = 0.0, h_triad = 0.0;
  double det_dreibein_min = 1e300, det_dreibein_max = -1e300;

  for (int i = 0; i < g.n_r; ++i) {
    for (int j = 0; j < g.n_theta; ++j) {
      const double r = g.r(i), t = g.theta(j);
      const auto f = frame(p, r, t);
      Mat3<double> F;
      F << f.e_r, f.e_s, f.e_n;
      ortho = std::max(ortho, (F.transpose() * F - Mat3<double>::Identity()).cwiseAbs().maxCoeff());
      triple_min = std::min(triple_min, f.triple_product());
      triple_max = std::max(triple_max, f.triple_product());

      const auto forms = fundamental_forms(p, r, t);
      const auto num = numeric_forms(p, r, t, step);
      g_err = std::max(g_err, (num.g - forms.first.g).cwiseAbs().maxCoeff() / std::max(1.0, forms.first.g.norm()));
      h_err = std::max(h_err, (num.h - forms.h).cwiseAbs().maxCoeff());
      a_err = std::max(a_err, (num.alpha - weingarten_closed(p, r, t)).cwiseAbs().maxCoeff());
      k_err = std::max(k_err, std::abs(forms.curvature.gauss - gaussian_curvature_closed(p, r, t)) /
                                  std::abs(gaussian_curvature_closed(p, r, t)));
      const auto num_left = numeric_forms(p, r, t, step, 1e-3, NormalSide::left_handed);
      h_triad = std::max(h_triad, (num_left.h - forms.h).cwiseAbs().maxCoeff());

      const double bound = q3_bound(forms.alpha);
      for (double frac : {-0.9, -0.5, 0.0, 0.5, 0.9}) {
        const double q3 = std::isfinite(bound) ? frac * bound : frac;
        const auto G = metric3d(forms.first.g, forms.alpha, q3);
        const double fq = rescale(forms.alpha, q3).f;
        metric_err = std::max(metric_err, rel(G.det, fq * fq * forms.first.det));
      }

      // A_r against d/dr arcsin(k r / N)
      auto theta_x = [&](double rr) { return std::asin(p.twist * rr / normalizer(p, rr, t)); };
      const double hr = 1e-5;
      double d;
      if (r + hr > p.w)
        d = (3.0 * theta_x(r) - 4.0 * theta_x(r - hr) + theta_x(r - 2.0 * hr)) / (2.0 * hr);
      else if (r - hr < -p.w)
        d = (-3.0 * theta_x(r) + 4.0 * theta_x(r + hr) - theta_x(r + 2.0 * hr)) / (2.0 * hr);
      else
        d = (theta_x(r + hr) - theta_x(r - hr)) / (2.0 * hr);
      const auto A = gauge_closed(p, r, t);
      ar_err = std::max(ar_err, std::abs(A.A_r - d));
      const auto A2 = detail::gauge_closed_unchecked(p, r, t + p.theta_max());
      period_err = std::max({period_err, std::abs(A.A_r - A2.A_r), std::abs(A.A_s - A2.A_s)});

      const double half_tr = forms.curvature.mean, printed = mean_curvature_printed(p, r, t);
      m_diff = std::max(m_diff, std::abs(printed - half_tr));
      m_sum = std::max(m_sum, std::abs(printed + half_tr));

      const auto dev = dreibein_vs_composition(p, r, t);
      dreibein_dev = std::max(dreibein_dev, dev.max_entry);
      det_dreibein_min = std::min(det_dreibein_min, dev.det_a);
      det_dreibein_max = std::max(det_dreibein_max, dev.det_a);
    }
  }

  CheckList checks;
  checks.hard("frame_orthonormality", ortho, 1e-12);
  checks.hard("triad_orientation_constant", triple_max - triple_min, 1e-12);
  checks.hard("dreibein_determinant_constant", det_dreibein_max - det_dreibein_min, 1e-12);
  checks.hard("first_form_vs_finite_difference", g_err, 1e-8);
  checks.hard("second_form_vs_finite_difference", h_err, 1e-6);
  checks.hard("weingarten_vs_finite_difference", a_err, 1e-6);
  checks.hard("gauss_curvature_det_alpha", k_err, 1e-10);
  checks.hard("metric_det_identity", metric_err, 1e-10);
  checks.hard("A_r_vs_arcsin_derivative", ar_err, 1e-8);
  checks.hard("gauge_theta_periodicity", period_err, 1e-10);

  // Spin lift over the full period at the centre line.
  {
    const auto loop = lift_theta_loop(p, 0.0, 4 * g.n_theta);
    const double closure = (loop.back().u - double(holonomy_sign(p)) * loop.front().u).norm();
    checks.hard("spin_lift_loop_holonomy", closure, 1e-8);
  }

  // Operator checks on the configured grid.
  {
    DiracOptions opt;
    opt.wilson = c.wilson;
    opt.printed_mass_sign = c.printed_mass_sign;
    const auto plus = assemble(p, g, +1, c.mass, opt);
    const auto minus = assemble(p, g, -1, c.mass, opt);
    checks.hard("dirac_hermiticity", std::max(plus.hermiticity_error, minus.hermiticity_error), 1e-12);
    checks.hard("dirac_kramers_conjugation", max_abs_difference(kramers_conjugate(plus.H), minus.H), 1e-14);
  }

  checks.soft("triad_triple_product", triple_min);
  checks.soft("dreibein_determinant", det_dreibein_min);
  checks.soft("dreibein_vs_composition_max_deviation", dreibein_dev);
  checks.soft("second_form_with_triad_normal_deviation", h_triad);
  checks.soft("mean_curvature_printed_minus_half_trace", m_diff);
  checks.soft("mean_curvature_printed_plus_half_trace", m_sum);
  {
    const auto closed = sample_gauge(p, g, FieldSource::closed_form);
    const auto conn = sample_gauge(p, g, FieldSource::connection);
    checks.soft("gauge_A_r_closed_vs_connection", (closed.A_r - conn.A_r).abs().maxCoeff());
    checks.soft("gauge_A_s_closed_vs_connection", (closed.A_s - conn.A_s).abs().maxCoeff());
  }

  Artifact a;
  a.table = std::move(checks.table);
  a.hard_failure = checks.hard_failure;
  int hard = 0, failed = 0;
  for (const auto& row : a.table.rows) {
    if (std::get<std::string>(row[1]) != "hard") continue;
    ++hard;
    if (std::get<std::string>(row[4]) == "fail") ++failed;
  }
  a.summaries["hard_checks"] = hard;
  a.summaries["hard_failures"] = failed;
  a.summaries["status"] = failed == 0 ? "pass" : "fail";
  return a;
}

Artifact run_pipeline(const std::string& name, const RunConfig& c) {
  if (name == "geometry") return cmd_geometry(c);
  if (name == "gauge") return cmd_gauge(c);
  if (name == "spectrum") return cmd_spectrum(c);
  if (name == "validate") return cmd_validate(c);
  throw UsageError("unknown pipeline '" + name + "'");
}

}  // namespace mobius
