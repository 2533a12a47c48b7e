#include "specloc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "specloc/curve_trace.hpp"
#include "specloc/envelope.hpp"
#include "specloc/errors.hpp"
#include "specloc/frame.hpp"
#include "specloc/inequality.hpp"
#include "specloc/io.hpp"
#include "specloc/oracle.hpp"

namespace specloc {

using json = nlohmann::ordered_json;

std::optional<Format> parse_format(std::string_view text) {
  if (text == "svg") return Format::svg;
  if (text == "csv") return Format::csv;
  if (text == "pgm") return Format::pgm;
  if (text == "json") return Format::json;
  return std::nullopt;
}

namespace {

constexpr int kSchemaVersion = 1;

ComplexMatrix load_matrix(const RunConfig& cfg) {
  if (cfg.matrix_path && cfg.gallery) throw ParameterError("give either --matrix or --gallery, not both");
  if (cfg.gallery) {
    MatrixSpec spec = *cfg.gallery;
    if (cfg.seed && (spec.name == GalleryName::random_real || spec.name == GalleryName::random_complex)) {
      spec.params["seed"] = static_cast<double>(*cfg.seed);
    }
    return build_matrix(spec);
  }
  if (cfg.matrix_path) return parse_matrix_file(*cfg.matrix_path);
  throw ParameterError("an input matrix is required (--matrix PATH or --gallery NAME)");
}

ComplexMatrix load_square(const RunConfig& cfg) {
  ComplexMatrix a = load_matrix(cfg);
  if (!a.square()) {
    throw DimensionError("matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         "; every command needs a square matrix");
  }
  return a;
}

std::size_t require_k(const RunConfig& cfg) {
  if (!cfg.k) throw ParameterError("--k is required for this command");
  return *cfg.k;
}

Window view_or(const RunConfig& cfg, Window fallback) {
  Window w = cfg.window.value_or(fallback);
  w.cols = cfg.cols;
  w.rows = cfg.rows;
  w.validate();
  return w;
}

void require_format(Format f, std::initializer_list<Format> allowed, std::string_view command) {
  if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
    throw ParameterError("format not supported by '" + std::string(command) + "'");
  }
}

json window_json(const Window& w) {
  return {{"s_min", w.s_min}, {"s_max", w.s_max}, {"t_min", w.t_min},
          {"t_max", w.t_max}, {"cols", w.cols},   {"rows", w.rows}};
}

json curves_json(const std::vector<CurveSet>& sets) {
  json out = json::array();
  for (const auto& set : sets) {
    out.push_back({{"kind", std::string(to_string(set.kind))},
                   {"polylines", set.polylines.size()},
                   {"closed", set.closed_count()}});
  }
  return out;
}

json eigen_json(const std::vector<cplx>& eig) {
  json out = json::array();
  for (const auto& z : eig) out.push_back({{"re", z.real()}, {"im", z.imag()}});
  return out;
}

void emit_warnings(const std::vector<CurveSet>& sets, std::ostream& err) {
  for (const auto& set : sets)
    for (const auto& w : set.warnings) err << "warning: " << w << '\n';
}

/// The allowed region {g ≥ -tol} of a single frame, in the frame's coordinates.
RegionRaster frame_region(const SpectralFrame& frame, const Window& view, Exec exec) {
  const double tol = membership_tolerance(frame);
  RegionRaster r;
  r.window = view;
  r.theta_count = 1;
  r.order = frame.k;
  r.kind = RegionKind::envelope;
  r.bits = classify_cells(
      view, [&](double s, double t) { return g_value(frame, s, t).g >= -tol; }, exec);
  return r;
}

void run_curve(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Format fmt = cfg.format.value_or(Format::svg);
  const ComplexMatrix a = load_square(cfg);
  const std::size_t k = require_k(cfg);
  const SpectralFrame frame = build_frame(a, k, cfg.theta);
  const Window view = view_or(cfg, auto_window(frame));

  if (fmt == Format::pgm) {
    write_pgm(os, frame_region(frame, view, cfg.exec));
    return;
  }

  std::vector<CurveSet> sets;
  sets.push_back(gamma_curve(frame, view, cfg.exec));
  if (cfg.include_gamma_min) sets.push_back(gamma_min_curve(frame, view, cfg.exec));
  if (cfg.include_hyperbolas) sets.push_back(hyperbola_set(frame.deltas, k, view, cfg.exec));
  emit_warnings(sets, err);

  switch (fmt) {
    case Format::csv:
      write_csv(os, sets);
      return;
    case Format::svg: {
      Figure fig;
      fig.view = view;
      fig.title = "order-" + std::to_string(k) + " eigenvalue inclusion curve";
      fig.curves = std::move(sets);
      fig.vertical_lines.assign(frame.deltas.begin(), frame.deltas.begin() + static_cast<std::ptrdiff_t>(k + 1));
      fig.eigenvalues = eigenvalues(frame.a_rot);
      write_svg(os, fig);
      return;
    }
    case Format::json: {
      const double eps = std::sqrt(frame.kappa);
      const DiagonalCaseReport diag = diagonal_case_report(frame.deltas, k, eps);
      json hyperbolas = json::array();
      for (const auto& h : diag.region_boundaries)
        hyperbolas.push_back({{"j", h.j}, {"i", h.i}, {"centre", h.centre}, {"half_gap", h.half_gap}});
      auto opt = [](const std::vector<std::optional<double>>& v) {
        json out = json::array();
        for (const auto& x : v) out.push_back(x ? json(*x) : json(nullptr));
        return out;
      };
      json doc = {{"schema_version", kSchemaVersion},
                  {"command", "curve"},
                  {"k", k},
                  {"theta", cfg.theta},
                  {"deltas", frame.deltas},
                  {"kappa", frame.kappa},
                  {"delta_next", frame.delta_next},
                  {"degenerate", frame.degenerate},
                  {"window", window_json(view)},
                  {"curves", curves_json(sets)},
                  {"eigenvalues", eigen_json(eigenvalues(frame.a_rot))},
                  {"diagonal_case",
                   {{"applies", frame.y_k.max_abs() <= 1e-12 * (1.0 + frame.scale)},
                    {"eps", eps},
                    {"epsilon_thresholds", diag.epsilon_thresholds},
                    {"s_minus", opt(diag.s_minus)},
                    {"s_plus", opt(diag.s_plus)},
                    {"hyperbolas", hyperbolas}}}};
      json warnings = json::array();
      for (const auto& set : sets)
        for (const auto& w : set.warnings) warnings.push_back(w);
      doc["warnings"] = warnings;
      os << doc.dump(2) << '\n';
      return;
    }
    case Format::pgm:
      break;
  }
}

/// Γ_k of every rotated frame drawn back in the unrotated plane.
CurveSet rotated_curves(const Envelope& env, const Window& view, Exec exec) {
  Window coarse = view;
  coarse.cols = std::min<std::size_t>(view.cols, 200);
  coarse.rows = std::min<std::size_t>(view.rows, 150);
  CurveSet all;
  all.window = view;
  all.kind = CurveKind::gamma_max;
  for (const auto& frame : env.frames()) {
    const cplx rot = std::polar(1.0, frame.theta);
    CurveSet one = trace_implicit(
        [&](double s, double t) {
          const cplx z = rot * cplx{s, t};
          return g_value(frame, z.real(), z.imag()).g;
        },
        coarse, CurveKind::gamma_max, exec);
    for (auto& pl : one.polylines) all.polylines.push_back(std::move(pl));
  }
  return all;
}

void run_envelope(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = cfg.format.value_or(Format::svg);
  const ComplexMatrix a = load_square(cfg);
  const std::size_t k = require_k(cfg);
  if (cfg.theta_count < 1) throw ParameterError("--theta-count must be >= 1");
  const Window view = view_or(cfg, numrange_window(a));
  FrameCache cache;
  const Envelope env(a, k, uniform_thetas(cfg.theta_count), cfg.exec, &cache);
  auto raster = [&] {
    RegionRaster r;
    r.window = view;
    r.theta_count = cfg.theta_count;
    r.order = k;
    r.kind = RegionKind::envelope;
    r.bits = classify_cells(view, [&env](double s, double t) { return env.contains({s, t}); }, cfg.exec);
    return r;
  };

  switch (fmt) {
    case Format::pgm:
      write_pgm(os, raster());
      return;
    case Format::csv:
      write_csv(os, {rotated_curves(env, view, cfg.exec)});
      return;
    case Format::svg: {
      Figure fig;
      fig.view = view;
      fig.title = "order-" + std::to_string(k) + " envelope over " + std::to_string(cfg.theta_count) +
                  " rotations";
      fig.rasters.push_back(raster());
      fig.curves.push_back(rotated_curves(env, view, cfg.exec));
      fig.curves.push_back(numerical_range_boundary(a, std::max<std::size_t>(cfg.theta_count, 3), cfg.exec));
      fig.eigenvalues = eigenvalues(a);
      write_svg(os, fig);
      return;
    }
    case Format::json: {
      const RegionRaster r = raster();
      json eig = json::array();
      for (const auto& z : eigenvalues(a))
        eig.push_back({{"re", z.real()}, {"im", z.imag()}, {"contained", env.contains(z)}});
      const json doc = {{"schema_version", kSchemaVersion}, {"command", "envelope"},
                        {"k", k},                           {"theta_count", cfg.theta_count},
                        {"window", window_json(view)},      {"member_cells", r.count()},
                        {"eigenvalues", eig}};
      os << doc.dump(2) << '\n';
      return;
    }
  }
}

void run_numrange(const RunConfig& cfg, std::ostream& os) {
  const Format fmt = cfg.format.value_or(Format::svg);
  const ComplexMatrix a = load_square(cfg);
  if (cfg.theta_count < 3) throw ParameterError("--theta-count must be >= 3 for numrange");
  const Window view = view_or(cfg, numrange_window(a));
  const CurveSet boundary = numerical_range_boundary(a, cfg.theta_count, cfg.exec);

  switch (fmt) {
    case Format::pgm:
      write_pgm(os, rank_numrange_raster(a, cfg.ell.value_or(1), cfg.theta_count, view, cfg.exec));
      return;
    case Format::csv:
      write_csv(os, {boundary});
      return;
    case Format::svg: {
      Figure fig;
      fig.view = view;
      fig.title = "numerical range";
      if (cfg.ell) fig.rasters.push_back(rank_numrange_raster(a, *cfg.ell, cfg.theta_count, view, cfg.exec));
      fig.curves.push_back(boundary);
      fig.eigenvalues = eigenvalues(a);
      write_svg(os, fig);
      return;
    }
    case Format::json: {
      json pts = json::array();
      for (const auto& p : boundary.polylines.front().points) pts.push_back({p.s, p.t});
      json doc = {{"schema_version", kSchemaVersion}, {"command", "numrange"},
                  {"theta_count", cfg.theta_count},   {"window", window_json(view)},
                  {"boundary", pts}};
      if (cfg.ell) {
        doc["ell"] = *cfg.ell;
        doc["member_cells"] = rank_numrange_raster(a, *cfg.ell, cfg.theta_count, view, cfg.exec).count();
      }
      os << doc.dump(2) << '\n';
      return;
    }
  }
}

void run_gallery(const RunConfig& cfg, std::ostream& os) {
  if (cfg.gallery || cfg.matrix_path) {
    write_matrix_text(os, load_matrix(cfg));
    return;
  }
  for (const auto& e : gallery_entries()) {
    std::string name(e.id);
    for (std::size_t p = 0; p < e.defaults.size(); ++p)
      name += (p == 0 ? ":" : ",") + e.defaults[p].first + "=" + format_exact(e.defaults[p].second);
    os << name;
    for (std::size_t pad = name.size(); pad < 32; ++pad) os << ' ';
    os << ' ' << e.summary << '\n';
  }
}

bool run_check(const RunConfig& cfg, std::ostream& os, std::ostream& err) {
  const Format fmt = cfg.format.value_or(Format::json);
  require_format(fmt, {Format::json}, "check");
  const ComplexMatrix a = load_square(cfg);
  const std::size_t k = require_k(cfg);
  if (cfg.theta_count < 1) throw ParameterError("--theta-count must be >= 1");
  FrameCache cache;
  const Envelope env(a, k, uniform_thetas(cfg.theta_count), cfg.exec, &cache);
  const double tol = env.tolerance();

  bool pass = true;
  double overall = std::numeric_limits<double>::infinity();
  json records = json::array();
  for (const cplx& z : eigenvalues(a)) {
    double worst = 0.0;
    const double g = env.min_g(z, &worst);
    overall = std::min(overall, g);
    if (!(g >= -tol)) {
      pass = false;
      err << "containment violated: eigenvalue " << format_exact(z.real()) << (z.imag() < 0 ? "" : "+")
          << format_exact(z.imag()) << "i has g = " << format_exact(g) << " at theta = "
          << format_exact(worst) << '\n';
    }
    records.push_back({{"re", z.real()}, {"im", z.imag()}, {"min_g_over_theta", g}, {"worst_theta", worst}});
  }
  const json doc = {{"schema_version", kSchemaVersion},
                    {"command", "check"},
                    {"k", k},
                    {"theta_count", cfg.theta_count},
                    {"tolerance", tol},
                    {"min_g", overall},
                    {"pass", pass},
                    {"eigenvalues", records}};
  os << doc.dump(2) << '\n';
  return pass;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buf;
    bool pass = true;
    switch (config.command) {
      case Command::curve:
        run_curve(config, buf, err);
        break;
      case Command::envelope:
        run_envelope(config, buf);
        break;
      case Command::numrange:
        run_numrange(config, buf);
        break;
      case Command::gallery:
        run_gallery(config, buf);
        break;
      case Command::check:
        pass = run_check(config, buf, err);
        break;
    }
    if (config.out.empty() || config.out == "-") {
      out << buf.str();
      out.flush();
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw IoError("cannot open '" + config.out + "' for writing");
      file << buf.str();
      file.close();
      if (!file) throw IoError("failed writing '" + config.out + "'");
    }
    return pass ? kExitOk : kExitViolation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace specloc
