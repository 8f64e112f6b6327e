#include "latspec/threebody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

#include "latspec/error.hpp"
#include "latspec/parallel.hpp"

namespace latspec {

EssentialSpectrum essential_spectrum(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                                     double gap_tol) {
  EssentialSpectrum out;
  out.K = K;
  out.band = three_body_band(model, K, grid);
  const FiberLattice lattice(grid, K);
  out.tolerance = std::max(max_symbol_gap(fiber_symbols(model, lattice)), tolerance_floor(out.band.lo));
  out.union_set = IntervalUnion::from_intervals({{out.band.lo, out.band.hi}});
  for (int a = 0; a < 3; ++a) {
    out.channels[a] = channel_spectrum(model, Channel::of(a), K, grid, gap_tol);
    out.channel_parts[a] = out.channels[a].spectrum;
    out.tolerance = std::max(out.tolerance, out.channels[a].sigma_two.max_fiber_tolerance);
    out.union_set = out.union_set.merged_with(out.channel_parts[a]);
  }
  return out;
}

SymmetricOperatorMatrix build_full_H(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                                     int max_n) {
  if (grid.n() > max_n) {
    std::ostringstream msg;
    msg << "dense three-body matrix needs n <= " << max_n << ", got n = " << grid.n();
    throw Error(ErrorCode::InvalidResolution, msg.str());
  }
  const FiberLattice lattice(grid, K);
  const std::size_t dim = lattice.size();
  const std::size_t n = grid.size();
  SymmetricOperatorMatrix h{linalg::Matrix(dim, dim), grid.n()};
  const auto symbols = fiber_symbols(model, lattice);
  for (std::size_t x = 0; x < dim; ++x) h.entries(x, x) = symbols[x];
  for (int a = 0; a < 3; ++a) {
    if (model.potential[a].empty()) continue;
    const Channel ch = Channel::of(a);
    const auto vt = interaction_table(model.potential[a], grid);
    for (std::size_t x = 0; x < dim; ++x) {
      const auto idx = lattice.particle_indices(x);
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t y = lattice.point_from(ch.alpha, idx[ch.alpha], ch.beta, i);
        h.entries(x, y) -= vt[grid.sub(idx[ch.beta], i)];
      }
    }
  }
  return h;
}

OracleReport oracle_compare(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                            const EssentialSpectrum& essential) {
  OracleReport r;
  r.eigenvalues = linalg::symmetric_eigenvalues(build_full_H(model, K, grid).entries);
  r.tolerance = essential.tolerance;
  const auto& u = essential.union_set;
  for (double e : r.eigenvalues) {
    if (u.contains(e, r.tolerance))
      ++r.contained;
    else if (e < u.lower())
      r.isolated_below.push_back(e);
    else if (e > u.upper())
      r.violations.push_back(e);
    else
      r.isolated_between.push_back(e);
  }
  r.containment_fraction =
      static_cast<double>(r.contained + r.isolated_below.size()) / static_cast<double>(r.eigenvalues.size());
  return r;
}

OracleReport oracle_compare(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid) {
  return oracle_compare(model, K, grid, essential_spectrum(model, K, grid));
}

namespace {

// Retained spectral decomposition of the square-root kernel on the node grid.
struct RangeBasis {
  linalg::Matrix u;  // n^3 x rank
  std::vector<double> lambda;
  std::size_t rank() const { return lambda.size(); }
};

void check_aliasing(const LatticeCoefficients& v, const TorusGrid& grid, int alpha) {
  const int n = grid.n();
  std::set<std::array<int, 3>> seen;
  for (const auto& [s, value] : v.entries()) {
    const std::array<int, 3> r{((s[0] % n) + n) % n, ((s[1] % n) + n) % n, ((s[2] % n) + n) % n};
    if (!seen.insert(r).second) {
      std::ostringstream msg;
      msg << "potential " << alpha + 1 << " has support vectors congruent mod n = " << n
          << "; its square root does not square back to it on this grid";
      throw Error(ErrorCode::IncompatibleDiscretization, msg.str());
    }
  }
}

RangeBasis range_basis(const LatticeCoefficients& v, const TorusGrid& grid) {
  RangeBasis b;
  if (v.empty()) return b;
  const std::size_t n = grid.size();
  const auto st = sqrt_interaction_table(v, grid);
  linalg::Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(i, j) = st[grid.sub(i, j)];
  const auto eig = linalg::symmetric_eigen(s);
  double scale = 0.0;
  for (double l : eig.values) scale = std::max(scale, std::abs(l));
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (eig.values[j] > 1e-12 * scale) keep.push_back(j);
  b.u = linalg::Matrix(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    b.lambda.push_back(eig.values[keep[c]]);
    for (std::size_t i = 0; i < n; ++i) b.u(i, c) = eig.vectors(i, keep[c]);
  }
  return b;
}

struct Conditioning {
  double condition = 1.0;
  bool singular = false;
};

Conditioning conditioning(const linalg::Matrix& a) {
  const auto s = linalg::singular_values(a);
  Conditioning c;
  c.singular = s.back() <= 1e-12 * std::max(1.0, s.front());
  c.condition = s.back() > 0.0 ? s.front() / s.back() : std::numeric_limits<double>::infinity();
  return c;
}

}  // namespace

linalg::Matrix FaddeevOperator::identity_minus_T() const {
  const std::size_t d = reduced_dim();
  linalg::Matrix m = linalg::Matrix::identity(d);
  std::size_t row0 = 0;
  for (int a = 0; a < 3; ++a) {
    std::size_t col0 = 0;
    for (int b = 0; b < 3; ++b) {
      const auto& blk = blocks[a][b];
      for (std::size_t i = 0; i < blk.rows(); ++i)
        for (std::size_t j = 0; j < blk.cols(); ++j) m(row0 + i, col0 + j) -= blk(i, j);
      col0 += dims[b];
    }
    row0 += dims[a];
  }
  return m;
}

FaddeevOperator faddeev_operator(const ModelConfig& model, const TorusPoint& K, double z, const TorusGrid& grid) {
  const FiberLattice lattice(grid, K);
  const std::size_t n = grid.size();
  const auto symbols = fiber_symbols(model, lattice);
  const double min_symbol = *std::min_element(symbols.begin(), symbols.end());
  if (!(z < min_symbol)) {
    std::ostringstream msg;
    msg << "z = " << z << " is not below the free three-body spectrum (min " << min_symbol << ")";
    throw Error(ErrorCode::OutOfDomain, msg.str());
  }
  std::vector<double> r0(symbols.size());
  for (std::size_t x = 0; x < symbols.size(); ++x) r0[x] = 1.0 / (symbols[x] - z);

  FaddeevOperator op;
  op.z = z;
  op.full_dim = 3 * lattice.size();
  std::array<RangeBasis, 3> basis;
  for (int a = 0; a < 3; ++a) {
    check_aliasing(model.potential[a], grid, a);
    basis[a] = range_basis(model.potential[a], grid);
    op.rank[a] = basis[a].rank();
    op.dims[a] = n * op.rank[a];
  }

  // Per spectator LU of I - Lambda U^T R0 U Lambda.
  std::array<std::vector<linalg::LuFactorization>, 3> w;
  std::vector<double> conditions(3, 1.0);
  for (int a = 0; a < 3; ++a) {
    const std::size_t r = op.rank[a];
    if (r == 0) continue;
    const Channel ch = Channel::of(a);
    const auto& B = basis[a];
    std::vector<std::optional<linalg::LuFactorization>> lus(n);
    std::vector<Conditioning> cond(n);
    parallel_for(n, [&](std::size_t j) {
      linalg::Matrix m = linalg::Matrix::identity(r);
      for (std::size_t i = 0; i < n; ++i) {
        const double g = r0[lattice.point_from(ch.alpha, j, ch.beta, i)];
        for (std::size_t p = 0; p < r; ++p)
          for (std::size_t q = 0; q < r; ++q)
            m(p, q) -= B.lambda[p] * B.lambda[q] * B.u(i, p) * B.u(i, q) * g;
      }
      cond[j] = conditioning(m);
      lus[j].emplace(std::move(m));
    });
    for (std::size_t j = 0; j < n; ++j) {
      if (cond[j].singular) {
        std::ostringstream msg;
        msg << "I - V^{1/2} R0 V^{1/2} is singular in channel " << a + 1 << " at z = " << z;
        throw Error(ErrorCode::ZInChannelSpectrum, msg.str());
      }
      conditions[a] = std::max(conditions[a], cond[j].condition);
      w[a].push_back(std::move(*lus[j]));
    }
  }
  op.max_condition = *std::max_element(conditions.begin(), conditions.end());

  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      op.blocks[a][b] = linalg::Matrix(op.dims[a], op.dims[b]);
      if (a == b || op.dims[a] == 0 || op.dims[b] == 0) continue;
      const Channel ca = Channel::of(a);
      const Channel cb = Channel::of(b);
      const auto& Ba = basis[a];
      const auto& Bb = basis[b];
      const std::size_t ra = op.rank[a], rb = op.rank[b];
      auto& blk = op.blocks[a][b];
      parallel_for(n, [&](std::size_t ja) {
        linalg::Matrix m(ra, op.dims[b]);
        for (std::size_t jb = 0; jb < n; ++jb) {
          const std::size_t x = lattice.point_from(a, ja, b, jb);
          const auto idx = lattice.particle_indices(x);
          const std::size_t na = idx[ca.beta], nb = idx[cb.beta];
          for (std::size_t p = 0; p < ra; ++p) {
            const double left = Ba.lambda[p] * Ba.u(na, p) * r0[x];
            for (std::size_t q = 0; q < rb; ++q) m(p, jb * rb + q) = left * Bb.u(nb, q) * Bb.lambda[q];
          }
        }
        const linalg::Matrix t = w[a][ja].solve(m);
        for (std::size_t p = 0; p < ra; ++p)
          for (std::size_t c = 0; c < op.dims[b]; ++c) blk(ja * ra + p, c) = t(p, c);
      });
    }
  return op;
}

double smallest_singular_value(const FaddeevOperator& op) {
  if (op.reduced_dim() == 0) return 1.0;
  const double s = linalg::singular_values(op.identity_minus_T()).back();
  return op.reduced_dim() < op.full_dim ? std::min(s, 1.0) : s;
}

std::vector<FaddeevScanPoint> faddeev_eigenvalue_scan(const ModelConfig& model, const TorusPoint& K,
                                                      const std::vector<double>& z_values, const TorusGrid& grid) {
  std::vector<FaddeevScanPoint> out(z_values.size());
  for (std::size_t i = 0; i < z_values.size(); ++i)
    out[i] = {z_values[i], smallest_singular_value(faddeev_operator(model, K, z_values[i], grid))};
  return out;
}

std::vector<FaddeevCandidate> faddeev_candidates(const ModelConfig& model, const TorusPoint& K,
                                                 const std::vector<FaddeevScanPoint>& scan, const TorusGrid& grid,
                                                 double threshold) {
  std::vector<FaddeevCandidate> out;
  auto f = [&](double z) { return smallest_singular_value(faddeev_operator(model, K, z, grid)); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
    if (!(scan[i].sigma_min < scan[i - 1].sigma_min && scan[i].sigma_min <= scan[i + 1].sigma_min)) continue;
    double a = scan[i - 1].z, b = scan[i + 1].z;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-12 * std::max(1.0, std::abs(a))) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = f(d);
      }
    }
    const double z = 0.5 * (a + b);
    const double s = f(z);
    out.push_back({z, s, s < threshold});
  }
  return out;
}

FiberEquivalenceReport fiber_equivalence_test(const ModelConfig& model, Channel ch, const TorusGrid& grid) {
  const std::size_t n = grid.size();
  const auto vt = interaction_table(model.potential[ch.alpha], grid);
  std::vector<double> eb(n), ec(n);
  for (std::size_t i = 0; i < n; ++i) {
    eb[i] = eval_dispersion(model.dispersion[ch.beta], grid.point(i));
    ec[i] = eval_dispersion(model.dispersion[ch.gamma], grid.point(i));
  }
  // (k_beta, k_gamma) = (g_a, g_b) at flat index a * n^3 + b
  linalg::Matrix full(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t row = a * n + b;
      full(row, row) += eb[a] + ec[b];
      const std::size_t total = grid.add(a, b);
      for (std::size_t a2 = 0; a2 < n; ++a2) {
        const std::size_t b2 = grid.sub(total, a2);
        full(row, a2 * n + b2) -= vt[grid.sub(a, a2)];
      }
    }
  FiberEquivalenceReport r;
  r.full_dim = n * n;
  auto full_ev = linalg::symmetric_eigenvalues(full);

  std::vector<std::vector<double>> per_fiber(n);
  parallel_for(n, [&](std::size_t t) {
    per_fiber[t] = linalg::symmetric_eigenvalues(build_h_matrix(model, ch, grid.point(t), grid).entries);
  });
  std::vector<double> fiber_ev;
  for (auto& v : per_fiber) fiber_ev.insert(fiber_ev.end(), v.begin(), v.end());
  r.block_count = n;
  r.fiber_eigenvalue_count = fiber_ev.size();
  std::sort(fiber_ev.begin(), fiber_ev.end());
  for (std::size_t i = 0; i < fiber_ev.size(); ++i)
    r.max_deviation = std::max(r.max_deviation, std::abs(fiber_ev[i] - full_ev[i]));
  return r;
}

}  // namespace latspec
