#pragma once

#include <vector>

#include "latspec/intervals.hpp"
#include "latspec/kinetic.hpp"
#include "latspec/twobody.hpp"

namespace latspec {

// Fiber H_alpha(K, p) = h_alpha((l_beta + l_gamma) K + p) + eps_alpha(l_alpha K - p).
struct ChannelFiberSpectrum {
  TorusPoint p;
  TorusPoint pair_momentum;  // k = K - k_alpha
  double shift = 0.0;        // eps_alpha(k_alpha)
  TwoBodySpectrum two_body;  // unshifted
};

ChannelFiberSpectrum channel_fiber(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusPoint& p,
                                   const TorusGrid& grid, const SpectrumOptions& options = {});

// One point of sigma_two: a shifted discrete eigenvalue of one fiber.
struct SigmaTwoSample {
  std::size_t spectator = 0;  // grid index of the spectator momentum
  TorusPoint p;
  int branch = 0;  // position among the fiber's eigenvalues below its band, ascending
  double value = 0.0;
};

struct SigmaTwo {
  std::vector<SigmaTwoSample> samples;
  // Largest jump of one branch between grid-neighbouring p.
  double branch_continuity = 0.0;
  // Default merge tolerance for assemble_intervals: 3 * branch_continuity.
  double gap_tol = 0.0;
  // Largest continuum tolerance used over the fibers.
  double max_fiber_tolerance = 0.0;

  std::vector<double> values() const;
};

// Sweeps the spectator momentum k_alpha over offset_alpha + grid, so that the
// fibers are exactly the channel blocks of the discrete three-body operator
// on FiberLattice(grid, K). Each fiber contributes its eigenvalues below
// band.lo - tolerance, shifted by eps_alpha(k_alpha).
SigmaTwo sigma_two(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusGrid& grid);

struct ChannelSpectrum {
  Channel channel;
  SigmaTwo sigma_two;
  double gap_tol = 0.0;
  IntervalUnion sigma_two_intervals;
  ThreeBodyBand band;
  // Closure of the sigma_two intervals minus [E_min, E_max].
  IntervalUnion outside_band;
  // sigma_two intervals united with [E_min, E_max].
  IntervalUnion spectrum;
};

// gap_tol <= 0 selects sigma_two's default.
ChannelSpectrum channel_spectrum(const ModelConfig& model, Channel ch, const TorusPoint& K, const TorusGrid& grid,
                                 double gap_tol = 0.0);

// Dense block of H_alpha(K) restricted to one spectator index, built directly
// on the three-body fiber lattice. Rows are indexed by the node particle beta.
linalg::Matrix channel_block(const ModelConfig& model, Channel ch, const FiberLattice& lattice,
                             std::size_t spectator);

struct PersistenceReport {
  bool holds = true;
  // Components of sigma_two_intervals separated from the band by more than
  // the separation margin, and the spectator grid indices missing from them.
  std::size_t components_checked = 0;
  std::vector<std::size_t> missing_spectators;
};

// Every component of sigma_two lying away from the band must be hit by every
// fiber: a bound-state branch that exists at one p outside the band exists at
// all p.
PersistenceReport check_persistence(const ChannelSpectrum& spectrum, const TorusGrid& grid, double margin);

}  // namespace latspec
