#include "latspec/channel.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "latspec/parallel.hpp"

namespace latspec {

ChannelFiberSpectrum channel_fiber(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusPoint& p,
                                   const TorusGrid& grid, const SpectrumOptions& options) {
  const auto& md = model.masses;
  const double l_alpha = md.single[ch.alpha];
  const TorusPoint k_alpha(l_alpha * K[0] - p[0], l_alpha * K[1] - p[1], l_alpha * K[2] - p[2]);
  ChannelFiberSpectrum out;
  out.p = p;
  out.pair_momentum = torus_sub(K, k_alpha);
  out.shift = eval_dispersion(model.dispersion[ch.alpha], k_alpha);
  out.two_body = discrete_spectrum(model, ch, out.pair_momentum, grid, options);
  return out;
}

std::vector<double> SigmaTwo::values() const {
  std::vector<double> v;
  v.reserve(samples.size());
  for (const auto& s : samples) v.push_back(s.value);
  return v;
}

SigmaTwo sigma_two(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusGrid& grid) {
  const FiberLattice lattice(grid, K);
  const double l_alpha = model.masses.single[ch.alpha];
  const std::size_t n = grid.size();

  struct Fiber {
    std::vector<double> values;
    double tolerance = 0.0;
  };
  std::vector<Fiber> fibers(n);
  parallel_for(n, [&](std::size_t j) {
    const TorusPoint k_alpha = lattice.momentum(ch.alpha, j);
    const TorusPoint k = torus_sub(K, k_alpha);
    const TorusPoint node_offset = lattice.offset(ch.beta);
    const PairNodes nodes = pair_nodes(model, ch, k, grid, node_offset);
    const double min_symbol = *std::min_element(nodes.symbol.begin(), nodes.symbol.end());
    const Band b = band(model, ch, k, grid);
    const double tol = std::max(max_symbol_gap(nodes.symbol), tolerance_floor(b.lo));
    const double threshold = std::min(b.lo, min_symbol) - tol;
    const double shift = eval_dispersion(model.dispersion[ch.alpha], k_alpha);
    auto bound = bound_states_below(model, ch, k, grid, threshold, node_offset);
    for (double& e : bound) e += shift;
    fibers[j] = {std::move(bound), tol};
  });

  SigmaTwo out;
  for (std::size_t j = 0; j < n; ++j) {
    const TorusPoint k_alpha = lattice.momentum(ch.alpha, j);
    const TorusPoint p(l_alpha * K[0] - k_alpha[0], l_alpha * K[1] - k_alpha[1], l_alpha * K[2] - k_alpha[2]);
    out.max_fiber_tolerance = std::max(out.max_fiber_tolerance, fibers[j].tolerance);
    for (std::size_t b = 0; b < fibers[j].values.size(); ++b)
      out.samples.push_back({j, p, static_cast<int>(b), fibers[j].values[b]});
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t nb : grid.neighbours(j)) {
      const auto& a = fibers[j].values;
      const auto& c = fibers[nb].values;
      for (std::size_t b = 0; b < std::min(a.size(), c.size()); ++b)
        out.branch_continuity = std::max(out.branch_continuity, std::abs(a[b] - c[b]));
    }
  out.gap_tol = std::max(3.0 * out.branch_continuity, tolerance_floor(0.0));
  return out;
}

ChannelSpectrum channel_spectrum(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusGrid& grid,
                                 double gap_tol) {
  ChannelSpectrum out;
  out.channel = ch;
  out.sigma_two = sigma_two(model, ch, K, grid);
  out.gap_tol = gap_tol > 0.0 ? gap_tol : out.sigma_two.gap_tol;
  const auto values = out.sigma_two.values();
  out.sigma_two_intervals = assemble_intervals(values, out.gap_tol);
  out.band = three_body_band(model, K, grid);
  std::vector<Interval> outside;
  for (const auto& iv : out.sigma_two_intervals.intervals()) {
    if (iv.lo < out.band.lo) outside.push_back({iv.lo, std::min(iv.hi, out.band.lo)});
    if (iv.hi > out.band.hi) outside.push_back({std::max(iv.lo, out.band.hi), iv.hi});
  }
  out.outside_band = IntervalUnion::from_intervals(outside);
  out.spectrum = out.sigma_two_intervals.merged_with(IntervalUnion::from_intervals({{out.band.lo, out.band.hi}}));
  return out;
}

linalg::Matrix channel_block(const ModelConfig& model, Channel ch, const FiberLattice& lattice,
                             std::size_t spectator) {
  const auto& grid = lattice.grid();
  const std::size_t n = grid.size();
  const auto vt = interaction_table(model.potential[ch.alpha], grid);
  linalg::Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = -vt[grid.sub(i, j)];
    const std::size_t x = lattice.point_from(ch.alpha, spectator, ch.beta, i);
    h(i, i) += kinetic_energy(model, lattice.momenta(x));
  }
  return h;
}

PersistenceReport check_persistence(const ChannelSpectrum& spectrum, const TorusGrid& grid, double margin) {
  PersistenceReport report;
  for (const auto& iv : spectrum.sigma_two_intervals.intervals()) {
    if (iv.hi >= spectrum.band.lo - margin && iv.lo <= spectrum.band.hi + margin) continue;
    ++report.components_checked;
    std::vector<bool> hit(grid.size(), false);
    for (const auto& s : spectrum.sigma_two.samples)
      if (s.value >= iv.lo && s.value <= iv.hi) hit[s.spectator] = true;
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (!hit[j]) report.missing_spectators.push_back(j);
  }
  report.holds = report.missing_spectators.empty();
  return report;
}

}  // namespace latspec
