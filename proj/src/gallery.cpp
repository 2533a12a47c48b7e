#include "specloc/gallery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>

#include "specloc/errors.hpp"

namespace specloc {

const std::vector<GalleryEntry>& gallery_entries() {
  static const std::vector<GalleryEntry> entries = {
      {GalleryName::toeplitz_eq1, "toeplitz_eq1", {}, "4x4 Toeplitz matrix with a single i entry"},
      {GalleryName::a_tilde, "a_tilde", {}, "3x3 real matrix, H = diag(3,1,0), K1 = 4, K2 = 20"},
      {GalleryName::a_hat, "a_hat", {{"eps", 1.01}}, "4x4 diagonal-frame matrix, deltas (2,1,0,0)"},
      {GalleryName::pair_A, "pair_A", {{"eps", 0.45}}, "4x4 diagonal-frame, deltas (1.36,1,0,0)"},
      {GalleryName::pair_B, "pair_B", {{"eps", 0.35}}, "4x4 diagonal-frame, deltas (1.16,1,0,0)"},
      {GalleryName::matrix_C, "matrix_C", {{"eps", 0.5}}, "6x6, k=4 loops all merge at eps = 1/2"},
      {GalleryName::matrix_F, "matrix_F", {{"eps1", 2.52}, {"eps2", 0.66}},
       "4x4 F(eps1, eps2); (2.52, 0.66) has an eigenvalue-free loop"},
      {GalleryName::matrix_A1, "matrix_A1", {}, "4x4 complex matrix with large entries"},
      {GalleryName::frank, "frank", {{"n", 11}}, "Frank matrix, determinant 1"},
      {GalleryName::random_real, "random_real", {{"n", 5}, {"seed", 0}},
       "seeded entries uniform in [-1,1)"},
      {GalleryName::random_complex, "random_complex", {{"n", 5}, {"seed", 0}},
       "seeded real and imaginary parts uniform in [-1,1)"},
  };
  return entries;
}

namespace {

const GalleryEntry& entry_for(GalleryName name) {
  for (const auto& e : gallery_entries())
    if (e.name == name) return e;
  throw ParameterError("unknown gallery matrix");
}

double param(const MatrixSpec& spec, const std::string& key) {
  if (auto it = spec.params.find(key); it != spec.params.end()) return it->second;
  for (const auto& [k, v] : entry_for(spec.name).defaults)
    if (k == key) return v;
  throw ParameterError("missing parameter '" + key + "'");
}

std::size_t size_param(const MatrixSpec& spec, const std::string& key, std::size_t min) {
  const double v = param(spec, key);
  if (!(v >= static_cast<double>(min)) || v != std::floor(v) || v > 4096) {
    throw ParameterError("parameter '" + key + "' must be an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(v);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParameterError("bad numeric parameter '" + std::string(s) + "'");
  }
  return v;
}

ComplexMatrix diagonal_frame_pair(double d1, double eps) {
  return {{d1, 0, 0, -eps / 2},
          {0, 1, -eps, 0},
          {0, eps, 0, -0.25},
          {eps / 2, 0, 0.25, 0}};
}

}  // namespace

std::string_view to_string(GalleryName name) { return entry_for(name).id; }

MatrixSpec parse_matrix_spec(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view id = trim(text.substr(0, colon));
  MatrixSpec spec;
  const auto& entries = gallery_entries();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const GalleryEntry& e) { return e.id == id; });
  if (it == entries.end()) throw ParameterError("unknown gallery matrix '" + std::string(id) + "'");
  spec.name = it->name;
  if (colon == std::string_view::npos) return spec;

  std::string_view rest = text.substr(colon + 1);
  std::size_t position = 0;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    std::string key;
    double value = 0.0;
    if (const auto eq = item.find('='); eq != std::string_view::npos) {
      key = std::string(trim(item.substr(0, eq)));
      value = parse_number(item.substr(eq + 1));
      const bool known = std::any_of(it->defaults.begin(), it->defaults.end(),
                                     [&](const auto& d) { return d.first == key; });
      if (!known) throw ParameterError("'" + std::string(id) + "' has no parameter '" + key + "'");
    } else {
      if (position >= it->defaults.size()) {
        throw ParameterError("too many parameters for '" + std::string(id) + "'");
      }
      key = it->defaults[position].first;
      value = parse_number(item);
    }
    ++position;
    spec.params[key] = value;
  }
  return spec;
}

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed, bool complex_entries) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen] {
    return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0;
  };
  ComplexMatrix m(n, n);
  for (auto& z : m.data()) {
    const double re = uniform();
    const double im = complex_entries ? uniform() : 0.0;
    z = {re, im};
  }
  return m;
}

ComplexMatrix build_matrix(const MatrixSpec& spec) {
  using namespace std::complex_literals;
  switch (spec.name) {
    case GalleryName::toeplitz_eq1:
      return {{1, 1, 0, 1i}, {2, 1, 1, 0}, {3, 2, 1, 1}, {4, 3, 2, 1}};
    case GalleryName::a_tilde:
      return {{3, 0, -2}, {0, 1, -4}, {2, 4, 0}};
    case GalleryName::a_hat: {
      const double e = param(spec, "eps");
      return {{2, 0, 0, -e}, {0, 1, 0, 0}, {0, 0, 0, -1}, {e, 0, 1, 0}};
    }
    case GalleryName::pair_A:
      return diagonal_frame_pair(1.36, param(spec, "eps"));
    case GalleryName::pair_B:
      return diagonal_frame_pair(1.16, param(spec, "eps"));
    case GalleryName::matrix_C: {
      const double r = param(spec, "eps") / std::sqrt(2.0);
      return {{941.0 / 580.0, 0, 0, 0, 0, -r},
              {0, 29.0 / 20.0, 0, 0, -r, 0},
              {0, 0, 5.0 / 4.0, 0, 0, -r},
              {0, 0, 0, 1, -r, 0},
              {0, r, 0, r, 0, -0.25},
              {r, 0, r, 0, 0.25, 0}};
    }
    case GalleryName::matrix_F: {
      const double e1 = param(spec, "eps1");
      const double e2 = param(spec, "eps2");
      return {{5, -e2, 0, 0}, {e2, 5, -e1, 0}, {0, e1, 0, -1}, {0, 0, 1, 0}};
    }
    case GalleryName::matrix_A1:
      return {{14.0 + 19i, -4.0 - 1i, -55.0 - 13i, -32.0 + 13i},
              {27.0 + 2i, 14.0 - 25i, 64, 72},
              {54.0 + 1i, 47.0 - 3i, 14.0 + 44i, -32.0 - 42i},
              {76, 73, 4.0 - 2i, -11.0 + 24i}};
    case GalleryName::frank: {
      const std::size_t n = size_param(spec, "n", 1);
      ComplexMatrix m(n, n);
      // 1-based: A_ij = n+1-i on the subdiagonal, n+1-j on and above the diagonal.
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
          if (j + 1 == i) {
            m(i - 1, j - 1) = static_cast<double>(n + 1 - i);
          } else if (j >= i) {
            m(i - 1, j - 1) = static_cast<double>(n + 1 - j);
          }
        }
      return m;
    }
    case GalleryName::random_real:
    case GalleryName::random_complex: {
      const std::size_t n = size_param(spec, "n", 1);
      const double seed = param(spec, "seed");
      if (!(seed >= 0.0) || seed != std::floor(seed)) throw ParameterError("seed must be a non-negative integer");
      return random_matrix(n, static_cast<std::uint64_t>(seed), spec.name == GalleryName::random_complex);
    }
  }
  throw ParameterError("unknown gallery matrix");
}

// ---------------------------------------------------------------------------

namespace {

void require_descending(std::span<const double> deltas, std::size_t need, const char* what) {
  if (deltas.size() < need) throw ParameterError(std::string(what) + ": too few deltas");
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (deltas[i] > deltas[i - 1]) throw ParameterError(std::string(what) + ": deltas must be non-increasing");
}

}  // namespace

std::vector<double> epsilon_thresholds(std::span<const double> deltas, std::size_t k) {
  if (k < 1) throw ParameterError("epsilon_thresholds: k must be >= 1");
  require_descending(deltas, k + 1, "epsilon_thresholds");
  const double last = deltas[k];
  std::vector<double> eps(k);
  for (std::size_t j = 0; j + 1 < k; ++j)
    eps[j] = std::sqrt((deltas[j + 1] - last) * (deltas[j] - deltas[j + 1]));
  eps[k - 1] = 0.5 * (deltas[k - 1] - last);
  return eps;
}

std::optional<std::pair<double, double>> s_pm(double delta_j, double delta_last, double eps) {
  const double half = 0.5 * (delta_j - delta_last);
  const double disc = half * half - eps * eps;
  if (disc < 0.0) return std::nullopt;
  const double mid = 0.5 * (delta_j + delta_last);
  const double r = std::sqrt(disc);
  return std::pair{mid - r, mid + r};
}

std::size_t region_index(std::span<const double> deltas, std::size_t k, double s, double t) {
  if (k < 1 || deltas.size() < k) throw ParameterError("region_index: need k deltas");
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i) {
    // (M)_bb ≥ (M)_ii  ⇔  (δ_b - δ_i)·[t² - (δ_b - s)(δ_i - s)] ≥ 0 for b < i.
    const double lhs = (deltas[best] - deltas[i]) * (t * t - (deltas[best] - s) * (deltas[i] - s));
    if (lhs < 0.0) best = i;
  }
  return best + 1;
}

std::vector<double> simultaneous_merge_deltas(double delta_last, double delta_k, std::size_t k) {
  if (k < 1) throw ParameterError("simultaneous_merge_deltas: k must be >= 1");
  if (!(delta_k > delta_last)) throw ParameterError("simultaneous_merge_deltas: need delta_k > delta_last");
  std::vector<double> d(k + 1);
  d[k] = delta_last;
  d[k - 1] = delta_k;
  const double gap_sq = (delta_k - delta_last) * (delta_k - delta_last);
  for (std::size_t j = k - 1; j >= 1; --j) d[j - 1] = d[j] + gap_sq / (4.0 * (d[j] - delta_last));
  return d;
}

double diagonal_gamma_prediction(std::span<const double> deltas, std::size_t k, double eps, double s,
                                 double t) {
  require_descending(deltas, k + 1, "diagonal_gamma_prediction");
  const double dj = deltas[region_index(deltas, k, s, t) - 1];
  return eps * eps * (dj - s) - ((dj - s) * (dj - s) + t * t) * (s - deltas[k]);
}

std::optional<std::pair<double, double>> hyperbola_meeting_abscissas(double delta_j, double delta_i,
                                                                     double delta_last, double eps) {
  // 2s² - (δ_j + δ_i + 2δ_last)s + (δ_j + δ_i)δ_last + ε² = 0
  const double b = delta_j + delta_i + 2.0 * delta_last;
  const double disc = (delta_j + delta_i - 2.0 * delta_last) * (delta_j + delta_i - 2.0 * delta_last) -
                      8.0 * eps * eps;
  if (disc < 0.0) return std::nullopt;
  const double r = std::sqrt(disc);
  const double lo = (b - r) / 4.0;
  const double hi = (b + r) / 4.0;
  auto on_branch = [&](double s) { return (delta_j - s) * (delta_i - s) >= 0.0; };
  if (!on_branch(lo) || !on_branch(hi)) return std::nullopt;
  return std::pair{lo, hi};
}

DiagonalCaseReport diagonal_case_report(std::span<const double> deltas, std::size_t k, double eps) {
  require_descending(deltas, k + 1, "diagonal_case_report");
  DiagonalCaseReport r;
  r.deltas.assign(deltas.begin(), deltas.begin() + static_cast<std::ptrdiff_t>(k + 1));
  r.eps = eps;
  r.epsilon_thresholds = epsilon_thresholds(r.deltas, k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto roots = s_pm(r.deltas[j], r.deltas[k], eps);
    r.s_minus.push_back(roots ? std::optional{roots->first} : std::nullopt);
    r.s_plus.push_back(roots ? std::optional{roots->second} : std::nullopt);
  }
  for (std::size_t j = 0; j <= k; ++j)
    for (std::size_t i = j + 1; i <= k; ++i)
      r.region_boundaries.push_back(
          {j + 1, i + 1, 0.5 * (r.deltas[j] + r.deltas[i]), 0.5 * (r.deltas[j] - r.deltas[i])});
  return r;
}

}  // namespace specloc
