#include "specloc/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "specloc/errors.hpp"

namespace specloc {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !space(line[i])) ++i;
    if (i > start) out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

bool parse_real(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(v);
}

cplx parse_entry(const Token& tok, std::size_t line) {
  const auto comma = tok.text.find(',');
  double re = 0.0;
  double im = 0.0;
  const bool ok = comma == std::string_view::npos
                      ? parse_real(tok.text, re)
                      : parse_real(tok.text.substr(0, comma), re) &&
                            parse_real(tok.text.substr(comma + 1), im);
  if (!ok) throw ParseError("malformed entry '" + std::string(tok.text) + "'", line, tok.column);
  return {re, im};
}

std::size_t parse_extent(const Token& tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || v == 0 || v > 100000) {
    throw ParseError("bad matrix dimension '" + std::string(tok.text) + "'", line, tok.column);
  }
  return v;
}

std::string fixed(double v, int precision = 2) {
  std::array<char, 64> buf{};
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed,
                                 precision);
  return {buf.data(), res.ptr};
}

const char* curve_colour(CurveKind kind) {
  switch (kind) {
    case CurveKind::gamma_max:
      return "#1f4e9c";
    case CurveKind::gamma_min:
      return "#c0392b";
    case CurveKind::union_curve:
      return "#6c3483";
    case CurveKind::hyperbola:
      return "#7f8c8d";
    case CurveKind::numrange:
      return "#117a65";
  }
  return "#000000";
}

const char* raster_colour(RegionKind kind) {
  switch (kind) {
    case RegionKind::envelope:
      return "#9ecae1";
    case RegionKind::numrange:
      return "#d9f0d3";
    case RegionKind::rank_numrange:
      return "#fdd0a2";
  }
  return "#cccccc";
}

std::string_view raster_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::envelope:
      return "envelope";
    case RegionKind::numrange:
      return "numrange";
    case RegionKind::rank_numrange:
      return "rank_numrange";
  }
  return "region";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

ComplexMatrix parse_matrix_text(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    ++number;
    if (!split(line).empty()) lines.emplace_back(number, line);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  if (lines.empty()) throw ParseError("empty matrix file", 1, 1);

  const auto head = split(lines.front().second);
  if (head.size() != 2) {
    throw ParseError("header must hold two integers 'n m'", lines.front().first, head.front().column);
  }
  const std::size_t n = parse_extent(head[0], lines.front().first);
  const std::size_t m = parse_extent(head[1], lines.front().first);

  ComplexMatrix a(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 >= lines.size()) {
      throw ParseError("expected " + std::to_string(n) + " rows, found " + std::to_string(i),
                       number + 1, 1);
    }
    const auto& [line_no, line] = lines[i + 1];
    const auto toks = split(line);
    if (toks.size() != m) {
      const std::size_t col = toks.size() > m ? toks[m].column : line.size() + 1;
      throw ParseError("expected " + std::to_string(m) + " entries, found " + std::to_string(toks.size()),
                       line_no, col);
    }
    for (std::size_t j = 0; j < m; ++j) a(i, j) = parse_entry(toks[j], line_no);
  }
  if (lines.size() > n + 1) {
    throw ParseError("trailing data after " + std::to_string(n) + " rows", lines[n + 1].first,
                     split(lines[n + 1].second).front().column);
  }
  return a;
}

ComplexMatrix parse_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return parse_matrix_text(buf.str());
}

std::string format_exact(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

void write_matrix_text(std::ostream& os, const ComplexMatrix& a) {
  os << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) os << ' ';
      const cplx z = a(i, j);
      os << format_exact(z.real());
      if (z.imag() != 0.0) os << ',' << format_exact(z.imag());
    }
    os << '\n';
  }
}

void write_svg(std::ostream& os, const Figure& fig) {
  const Window& v = fig.view;
  v.validate();
  const double w = static_cast<double>(fig.width);
  const double h = static_cast<double>(fig.height);
  auto x_of = [&](double s) { return (s - v.s_min) / (v.s_max - v.s_min) * w; };
  auto y_of = [&](double t) { return (v.t_max - t) / (v.t_max - v.t_min) * h; };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fig.width << "\" height=\""
     << fig.height << "\" viewBox=\"0 0 " << fig.width << ' ' << fig.height << "\" data-s-min=\""
     << format_exact(v.s_min) << "\" data-s-max=\"" << format_exact(v.s_max) << "\" data-t-min=\""
     << format_exact(v.t_min) << "\" data-t-max=\"" << format_exact(v.t_max) << "\">\n";
  if (!fig.title.empty()) os << "<title>" << xml_escape(fig.title) << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << fig.width << "\" height=\"" << fig.height
     << "\" fill=\"#ffffff\"/>\n";

  for (const auto& r : fig.rasters) {
    // One rect per horizontal run of member cells.
    const double cw = w / static_cast<double>(r.window.cols);
    const double ch = h / static_cast<double>(r.window.rows);
    const double x0 = x_of(r.window.s_min);
    const double y0 = y_of(r.window.t_max);
    const double sx = (r.window.s_max - r.window.s_min) / (v.s_max - v.s_min);
    const double sy = (r.window.t_max - r.window.t_min) / (v.t_max - v.t_min);
    os << "<g class=\"" << raster_name(r.kind) << "\" data-order=\"" << r.order
       << "\" data-theta-count=\"" << r.theta_count << "\" fill=\"" << raster_colour(r.kind)
       << "\" shape-rendering=\"crispEdges\">\n";
    for (std::size_t i = 0; i < r.window.rows; ++i) {
      std::size_t j = 0;
      while (j < r.window.cols) {
        if (!r.at(i, j)) {
          ++j;
          continue;
        }
        const std::size_t start = j;
        while (j < r.window.cols && r.at(i, j)) ++j;
        os << "<rect x=\"" << fixed(x0 + sx * cw * static_cast<double>(start)) << "\" y=\""
           << fixed(y0 + sy * ch * static_cast<double>(i)) << "\" width=\""
           << fixed(sx * cw * static_cast<double>(j - start)) << "\" height=\"" << fixed(sy * ch)
           << "\"/>\n";
      }
    }
    os << "</g>\n";
  }

  for (double s : fig.vertical_lines) {
    os << "<line class=\"delta\" x1=\"" << fixed(x_of(s)) << "\" y1=\"0\" x2=\"" << fixed(x_of(s))
       << "\" y2=\"" << fig.height << "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6 4\""
       << " data-s=\"" << format_exact(s) << "\"/>\n";
  }

  std::size_t id = 0;
  for (const auto& set : fig.curves) {
    for (const auto& pl : set.polylines) {
      if (pl.points.empty()) continue;
      os << "<path class=\"" << to_string(set.kind) << "\" data-curve-id=\"" << id++
         << "\" fill=\"none\" stroke=\"" << curve_colour(set.kind)
         << "\" stroke-width=\"1.5\" d=\"";
      for (std::size_t p = 0; p < pl.points.size(); ++p) {
        os << (p == 0 ? "M" : " L") << fixed(x_of(pl.points[p].s)) << ' '
           << fixed(y_of(pl.points[p].t));
      }
      if (pl.closed) os << " Z";
      os << "\"/>\n";
    }
  }

  for (const cplx& z : fig.eigenvalues) {
    os << "<rect class=\"eigenvalue\" x=\"" << fixed(x_of(z.real()) - 3.0) << "\" y=\""
       << fixed(y_of(z.imag()) - 3.0) << "\" width=\"6\" height=\"6\" fill=\"none\" "
       << "stroke=\"#000000\" stroke-width=\"1\" data-re=\"" << format_exact(z.real())
       << "\" data-im=\"" << format_exact(z.imag()) << "\"/>\n";
  }
  os << "</svg>\n";
}

void write_csv(std::ostream& os, const std::vector<CurveSet>& sets) {
  os << "curve_id,kind,s,t\n";
  std::size_t id = 0;
  for (const auto& set : sets) {
    for (const auto& pl : set.polylines) {
      for (const auto& p : pl.points)
        os << id << ',' << to_string(set.kind) << ',' << format_exact(p.s) << ','
           << format_exact(p.t) << '\n';
      ++id;
    }
  }
}

void write_pgm(std::ostream& os, const RegionRaster& raster) {
  os << "P5\n" << raster.window.cols << ' ' << raster.window.rows << "\n255\n";
  std::vector<char> bytes(raster.bits.size());
  std::transform(raster.bits.begin(), raster.bits.end(), bytes.begin(),
                 [](std::uint8_t b) { return b != 0 ? static_cast<char>(255) : char{0}; });
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace specloc
