#include "latspec/twobody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "latspec/error.hpp"
#include "latspec/optimize.hpp"

namespace latspec {

namespace {

const double kFourierPrefactor = std::pow(kTwoPi, -1.5);

struct PairRatios {
  double to_beta;   // l_{gamma beta}
  double to_gamma;  // l_{beta gamma}
};

PairRatios ratios(const ModelConfig& model, Channel ch) {
  return {model.masses.pair[ch.gamma][ch.beta], model.masses.pair[ch.beta][ch.gamma]};
}

SmoothFunction symbol_function(const ModelConfig& model, Channel ch, const TorusPoint& k) {
  auto as_vec = [](const std::vector<double>& x) { return Vec3{x[0], x[1], x[2]}; };
  SmoothFunction f;
  f.dim = 3;
  f.value = [&model, ch, k, as_vec](const std::vector<double>& x) { return two_body_symbol(model, ch, k, as_vec(x)); };
  f.gradient = [&model, ch, k, as_vec](const std::vector<double>& x) {
    const Vec3 g = two_body_symbol_gradient(model, ch, k, as_vec(x));
    return std::vector<double>{g[0], g[1], g[2]};
  };
  f.hessian = [&model, ch, k, as_vec](const std::vector<double>& x) {
    const Mat3 h = two_body_symbol_hessian(model, ch, k, as_vec(x));
    std::vector<double> out(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out[i * 3 + j] = h[i][j];
    return out;
  };
  return f;
}

std::vector<double> to_vector(const Vec3& v) { return {v[0], v[1], v[2]}; }

}  // namespace

PairNodes pair_nodes(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid,
                     const TorusPoint& node_offset) {
  const auto r = ratios(model, ch);
  PairNodes nodes;
  nodes.channel = ch;
  nodes.k = k;
  nodes.k_beta.reserve(grid.size());
  nodes.q.reserve(grid.size());
  nodes.symbol.reserve(grid.size());
  for (const auto& g : grid.points()) {
    const TorusPoint kb = torus_add(node_offset, g);
    const TorusPoint kc = torus_sub(k, kb);
    nodes.k_beta.push_back(kb);
    nodes.q.push_back({kb[0] - r.to_beta * k[0], kb[1] - r.to_beta * k[1], kb[2] - r.to_beta * k[2]});
    nodes.symbol.push_back(eval_dispersion(model.dispersion[ch.beta], kb) +
                           eval_dispersion(model.dispersion[ch.gamma], kc));
  }
  return nodes;
}

double two_body_symbol(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q) {
  const auto r = ratios(model, ch);
  Vec3 a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = r.to_beta * k[i] + q[i];
    b[i] = r.to_gamma * k[i] - q[i];
  }
  return eval_dispersion(model.dispersion[ch.beta], a) + eval_dispersion(model.dispersion[ch.gamma], b);
}

Vec3 two_body_symbol_gradient(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q) {
  const auto r = ratios(model, ch);
  Vec3 a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = r.to_beta * k[i] + q[i];
    b[i] = r.to_gamma * k[i] - q[i];
  }
  const Vec3 ga = dispersion_gradient(model.dispersion[ch.beta], a);
  const Vec3 gb = dispersion_gradient(model.dispersion[ch.gamma], b);
  return {ga[0] - gb[0], ga[1] - gb[1], ga[2] - gb[2]};
}

Mat3 two_body_symbol_hessian(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q) {
  const auto r = ratios(model, ch);
  Vec3 a{}, b{};
  for (int i = 0; i < 3; ++i) {
    a[i] = r.to_beta * k[i] + q[i];
    b[i] = r.to_gamma * k[i] - q[i];
  }
  const Mat3 ha = dispersion_hessian(model.dispersion[ch.beta], a);
  const Mat3 hb = dispersion_hessian(model.dispersion[ch.gamma], b);
  Mat3 h{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h[i][j] = ha[i][j] + hb[i][j];
  return h;
}

Band band(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid) {
  const PairNodes nodes = pair_nodes(model, ch, k, grid);
  const auto [min_it, max_it] = std::minmax_element(nodes.symbol.begin(), nodes.symbol.end());
  const auto f = symbol_function(model, ch, k);
  const auto lo = refine_minimum(f, to_vector(nodes.q[min_it - nodes.symbol.begin()]));
  const auto hi = refine_maximum(f, to_vector(nodes.q[max_it - nodes.symbol.begin()]));
  return {std::min(lo.value, *min_it), std::max(hi.value, *max_it)};
}

double max_symbol_gap(std::vector<double> symbols) {
  std::sort(symbols.begin(), symbols.end());
  double gap = 0.0;
  for (std::size_t i = 1; i < symbols.size(); ++i) gap = std::max(gap, symbols[i] - symbols[i - 1]);
  return gap;
}

double tolerance_floor(double scale) { return 1e-9 * (1.0 + std::abs(scale)); }

std::vector<double> interaction_table(const LatticeCoefficients& potential, const TorusGrid& grid) {
  std::vector<double> t(grid.size());
  for (std::size_t d = 0; d < grid.size(); ++d)
    t[d] = grid.weight() * kFourierPrefactor * eval_potential(potential, grid.point(d));
  return t;
}

std::vector<double> sqrt_interaction_table(const LatticeCoefficients& potential, const TorusGrid& grid) {
  std::vector<double> t(grid.size());
  for (std::size_t d = 0; d < grid.size(); ++d)
    t[d] = grid.weight() * kFourierPrefactor * potential_sqrt_kernel(potential, grid.point(d));
  return t;
}

SymmetricOperatorMatrix build_h_matrix(const ModelConfig& model, Channel ch, const TorusPoint& k,
                                       const TorusGrid& grid, const TorusPoint& node_offset) {
  const PairNodes nodes = pair_nodes(model, ch, k, grid, node_offset);
  const auto vt = interaction_table(model.potential[ch.alpha], grid);
  const std::size_t n = grid.size();
  SymmetricOperatorMatrix h{linalg::Matrix(n, n), grid.n()};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h.entries(i, j) = -vt[grid.sub(i, j)];
    h.entries(i, i) += nodes.symbol[i];
  }
  return h;
}

TwoBodySpectrum discrete_spectrum(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid,
                                  const SpectrumOptions& options) {
  TwoBodySpectrum s;
  s.band = band(model, ch, k, grid);
  s.continuum_tolerance = options.continuum_tolerance.value_or(
      std::max(max_symbol_gap(pair_nodes(model, ch, k, grid).symbol), tolerance_floor(s.band.lo)));
  const auto h = build_h_matrix(model, ch, k, grid);
  s.eigenvalues = options.use_jacobi ? linalg::jacobi_eigenvalues(h.entries) : linalg::symmetric_eigenvalues(h.entries);
  for (double e : s.eigenvalues) {
    if (e < s.band.lo - s.continuum_tolerance) s.below.push_back(e);
    if (e > s.band.hi + s.continuum_tolerance) s.above.push_back(e);
  }
  return s;
}

SymmetricOperatorMatrix birman_schwinger(const ModelConfig& model, Channel ch, const TorusPoint& k, double z,
                                         const TorusGrid& grid) {
  const Band b = band(model, ch, k, grid);
  if (z > b.lo) {
    std::ostringstream msg;
    msg << "z = " << z << " lies above the band bottom " << b.lo;
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  const PairNodes nodes = pair_nodes(model, ch, k, grid);
  const std::size_t n = grid.size();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = nodes.symbol[i] - z;
    if (!(d > 0.0)) throw Error(ErrorCode::SingularDenominator, "a grid node sits at the band minimum z");
    root[i] = std::sqrt(d);
  }
  const auto vt = interaction_table(model.potential[ch.alpha], grid);
  SymmetricOperatorMatrix g{linalg::Matrix(n, n), grid.n()};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.entries(i, j) = vt[grid.sub(i, j)] / (root[i] * root[j]);
  return g;
}

int count_eigenvalues(const ModelConfig& model, Channel ch, const TorusPoint& k, double z, const TorusGrid& grid) {
  const auto g = birman_schwinger(model, ch, k, z, grid);
  const auto ev = linalg::symmetric_eigenvalues(g.entries);
  return static_cast<int>(std::count_if(ev.begin(), ev.end(), [](double e) { return e > 1.0; }));
}

double fredholm_determinant(const ModelConfig& model, Channel ch, const TorusPoint& k, double z,
                            const TorusGrid& grid) {
  const Band b = band(model, ch, k, grid);
  if (z >= b.lo && z <= b.hi) {
    std::ostringstream msg;
    msg << "z = " << z << " lies inside the band [" << b.lo << ", " << b.hi << "]";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  const PairNodes nodes = pair_nodes(model, ch, k, grid);
  const auto vt = interaction_table(model.potential[ch.alpha], grid);
  const std::size_t n = grid.size();
  linalg::Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = -vt[grid.sub(i, j)] / (nodes.symbol[j] - z);
    m(i, i) += 1.0;
  }
  return linalg::LuFactorization(std::move(m)).determinant();
}

std::vector<double> bound_states_below(const ModelConfig& model, Channel ch, const TorusPoint& k,
                                       const TorusGrid& grid, double threshold, const TorusPoint& node_offset) {
  const PairNodes nodes = pair_nodes(model, ch, k, grid, node_offset);
  const double min_symbol = *std::min_element(nodes.symbol.begin(), nodes.symbol.end());
  if (!(threshold < min_symbol)) throw Error(ErrorCode::OutOfDomain, "threshold must lie below every node symbol");

  // V = L L^T with cosine/sine columns per support vector.
  const double inv_volume = 1.0 / static_cast<double>(grid.size());
  std::vector<std::vector<double>> columns;
  double total = 0.0;
  for (const auto& [s, v] : model.potential[ch.alpha].entries()) {
    total += v;
    const double scale = std::sqrt(v * inv_volume);
    std::vector<double> c(grid.size()), sn(grid.size());
    bool any_sin = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& kb = nodes.k_beta[i];
      const double phase = s[0] * kb[0] + s[1] * kb[1] + s[2] * kb[2];
      c[i] = scale * std::cos(phase);
      sn[i] = scale * std::sin(phase);
      any_sin = any_sin || std::abs(sn[i]) > 0.0;
    }
    columns.push_back(std::move(c));
    if (any_sin && s != LatticeVector{0, 0, 0}) columns.push_back(std::move(sn));
  }
  if (columns.empty()) return {};

  const std::size_t m = columns.size();
  auto count_below = [&](double z) {
    linalg::Matrix g(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) sum += columns[a][i] * columns[b][i] / (nodes.symbol[i] - z);
        g(a, b) = g(b, a) = sum;
      }
    if (m == 1) return g(0, 0) > 1.0 ? 1 : 0;
    const auto ev = linalg::symmetric_eigenvalues(g);
    return static_cast<int>(std::count_if(ev.begin(), ev.end(), [](double e) { return e > 1.0; }));
  };

  const int count = count_below(threshold);
  std::vector<double> out;
  out.reserve(count);
  const double floor = min_symbol - total - 1.0;
  for (int j = 1; j <= count; ++j) {
    double lo = floor;
    double hi = threshold;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, std::abs(hi)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (count_below(mid) >= j)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(0.5 * (lo + hi));
  }
  return out;
}

std::vector<Vec3> minimizer_track(const ModelConfig& model, Channel ch, const std::vector<TorusPoint>& k_path,
                                  const TorusGrid& grid) {
  std::vector<Vec3> out;
  out.reserve(k_path.size());
  for (const auto& k : k_path) {
    const PairNodes nodes = pair_nodes(model, ch, k, grid);
    const auto it = std::min_element(nodes.symbol.begin(), nodes.symbol.end());
    const auto f = symbol_function(model, ch, k);
    const auto r = refine_minimum(f, to_vector(nodes.q[it - nodes.symbol.begin()]));
    if (!r.converged) {
      std::ostringstream msg;
      msg << "minimizer descent did not converge (gradient norm " << r.gradient_norm << " after " << r.iterations
          << " iterations)";
      throw Error(ErrorCode::NumericalFailure, msg.str());
    }
    const Vec3 q{r.x[0], r.x[1], r.x[2]};
    if (!out.empty()) {
      const TorusPoint a(out.back()[0], out.back()[1], out.back()[2]);
      const TorusPoint b(q[0], q[1], q[2]);
      if (torus_distance(a, b) > grid.spacing() + 1e-9)
        throw Error(ErrorCode::NumericalFailure, "minimizer jumped by more than one grid step along the path");
    }
    out.push_back(q);
  }
  return out;
}

}  // namespace latspec
