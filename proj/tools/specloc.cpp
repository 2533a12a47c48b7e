// Command-line front end: specloc <curve|envelope|numrange|gallery|check> [options]

#include <charconv>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specloc/cli.hpp"
#include "specloc/errors.hpp"

namespace {

struct RawOptions {
  std::size_t k = 0;
  std::size_t theta_count = 120;
  std::string grid;
  std::string window;
  std::string matrix;
  std::string gallery;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;
  bool gamma_min = false;
  bool hyperbolas = false;
  double theta = 0.0;
  std::size_t ell = 0;
  bool serial = false;
};

struct Handles {
  CLI::Option* k = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* ell = nullptr;
};

Handles add_options(CLI::App* app, RawOptions& o, specloc::Command cmd) {
  using specloc::Command;
  Handles h;
  auto* matrix = app->add_option("--matrix", o.matrix, "matrix text file (header 'n m', entries re or re,im)");
  auto* gallery = app->add_option("--gallery", o.gallery, "built-in matrix, NAME[:key=value,...]");
  matrix->excludes(gallery);
  h.seed = app->add_option("--seed", o.seed, "seed for the random_real / random_complex gallery entries");
  app->add_option("--out", o.out, "output path (default: stdout)");
  if (cmd == Command::gallery) return h;

  h.k = app->add_option("--k", o.k, "order k of the inequality, 1 <= k <= n-1");
  app->add_option("--theta-count", o.theta_count, "number of rotations, theta_m = 2*pi*m/N")
      ->capture_default_str();
  app->add_option("--grid", o.grid, "sampling grid WxH (default 800x600)");
  app->add_option("--window", o.window, "view window smin,smax,tmin,tmax");
  app->add_option("--format", o.format, "svg, csv, pgm or json");
  app->add_flag("--serial", o.serial, "use the serial reference kernels");
  if (cmd == Command::curve) {
    app->add_flag("--with-gamma-min", o.gamma_min, "also trace the lambda_min companion curve");
    app->add_flag("--with-hyperbolas", o.hyperbolas, "also trace the diagonal-case region boundaries");
    app->add_option("--theta", o.theta, "rotation of the traced frame (radians)");
  }
  if (cmd == Command::numrange) h.ell = app->add_option("--ell", o.ell, "rank of the Lambda_ell raster");
  return h;
}

std::vector<double> split_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (used != item.size()) throw specloc::ParameterError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

specloc::RunConfig to_config(specloc::Command cmd, const RawOptions& o, const Handles& h) {
  specloc::RunConfig cfg;
  cfg.command = cmd;
  if (h.k != nullptr && h.k->count() > 0) cfg.k = o.k;
  cfg.theta_count = o.theta_count;
  if (!o.grid.empty()) {
    const auto x = o.grid.find('x');
    auto dim = [&](std::string_view part) {
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
      if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || v < 2) {
        throw specloc::ParameterError("--grid expects WxH with integers W, H >= 2");
      }
      return v;
    };
    if (x == std::string::npos) throw specloc::ParameterError("--grid expects WxH with integers W, H >= 2");
    const std::string_view g = o.grid;
    cfg.cols = dim(g.substr(0, x));
    cfg.rows = dim(g.substr(x + 1));
  }
  if (!o.window.empty()) {
    const auto v = split_numbers(o.window, ',');
    if (v.size() != 4) throw specloc::ParameterError("--window expects smin,smax,tmin,tmax");
    specloc::Window w;
    w.s_min = v[0];
    w.s_max = v[1];
    w.t_min = v[2];
    w.t_max = v[3];
    cfg.window = w;
  }
  if (!o.matrix.empty()) cfg.matrix_path = o.matrix;
  if (!o.gallery.empty()) cfg.gallery = specloc::parse_matrix_spec(o.gallery);
  if (h.seed != nullptr && h.seed->count() > 0) cfg.seed = o.seed;
  cfg.out = o.out;
  if (!o.format.empty()) {
    cfg.format = specloc::parse_format(o.format);
    if (!cfg.format) throw specloc::ParameterError("unknown format '" + o.format + "'");
  }
  cfg.include_gamma_min = o.gamma_min;
  cfg.include_hyperbolas = o.hyperbolas;
  cfg.theta = o.theta;
  if (h.ell != nullptr && h.ell->count() > 0) cfg.ell = o.ell;
  cfg.exec = o.serial ? specloc::Exec::serial : specloc::Exec::parallel;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  using specloc::Command;
  CLI::App app{"Eigenvalue inclusion curves and envelopes for square complex matrices"};
  app.require_subcommand(1);

  struct Sub {
    Command cmd;
    const char* name;
    const char* help;
    CLI::App* app = nullptr;
    RawOptions raw;
    Handles handles;
  };
  std::vector<Sub> subs = {
      {Command::curve, "curve", "trace the order-k curve for one rotation", nullptr, {}, {}},
      {Command::envelope, "envelope", "raster of the intersection over rotations, with the rotated curves", nullptr, {}, {}},
      {Command::numrange, "numrange", "numerical range boundary and optional rank-ell raster", nullptr, {}, {}},
      {Command::gallery, "gallery", "list built-in matrices, or print one with --gallery", nullptr, {}, {}},
      {Command::check, "check", "verify every eigenvalue lies in the envelope; JSON report", nullptr, {}, {}},
  };
  for (auto& s : subs) {
    s.app = app.add_subcommand(s.name, s.help);
    s.handles = add_options(s.app, s.raw, s.cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? specloc::kExitOk : specloc::kExitUsage;
  }

  for (auto& s : subs) {
    if (!s.app->parsed()) continue;
    specloc::RunConfig cfg;
    try {
      cfg = to_config(s.cmd, s.raw, s.handles);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return specloc::kExitUsage;
    }
    return specloc::run(cfg, std::cout, std::cerr);
  }
  return specloc::kExitUsage;
}
