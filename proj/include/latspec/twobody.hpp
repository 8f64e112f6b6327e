#pragma once

#include <optional>
#include <vector>

#include "latspec/linalg.hpp"
#include "latspec/model.hpp"
#include "latspec/torus.hpp"

namespace latspec {

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

// Dense real symmetric discretization of a fiber operator on a torus grid.
struct SymmetricOperatorMatrix {
  linalg::Matrix entries;
  int grid_n = 0;

  std::size_t dim() const { return entries.rows(); }
};

// Quadrature nodes of h_alpha(k).
//
// The nodes are placed so that the momentum of particle beta runs over
// node_offset + grid, with k_gamma = k - k_beta. Then the interaction couples
// nodes through grid differences only and the discrete operator is exactly
// the finite-lattice (Z_n^3) two-particle fiber when k and the offset are grid
// points. q holds the relative momentum lift k_beta - l_{gamma beta} k.
struct PairNodes {
  Channel channel;
  TorusPoint k;
  std::vector<TorusPoint> k_beta;
  std::vector<Vec3> q;
  std::vector<double> symbol;
};

PairNodes pair_nodes(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid,
                     const TorusPoint& node_offset = {});

// E_k(q) = eps_beta(l_{gamma beta} k + q) + eps_gamma(l_{beta gamma} k - q)
double two_body_symbol(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q);
Vec3 two_body_symbol_gradient(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q);
Mat3 two_body_symbol_hessian(const ModelConfig& model, Channel ch, const TorusPoint& k, const Vec3& q);

// [min E_k, max E_k]: grid extremes refined by Newton descent/ascent.
Band band(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid);

// Largest gap between sorted symbol values; the default continuum tolerance.
double max_symbol_gap(std::vector<double> symbols);
// Lower bound applied to every continuum tolerance so that a flat band does
// not turn round-off into isolated eigenvalues.
double tolerance_floor(double scale);

// Interaction kernel w (2 pi)^{-3/2} v(g) tabulated by grid index of g.
std::vector<double> interaction_table(const LatticeCoefficients& potential, const TorusGrid& grid);
std::vector<double> sqrt_interaction_table(const LatticeCoefficients& potential, const TorusGrid& grid);

// diag(E_k(q_i)) - V with V_ij = w (2 pi)^{-3/2} v(q_i - q_j).
SymmetricOperatorMatrix build_h_matrix(const ModelConfig& model, Channel ch, const TorusPoint& k,
                                       const TorusGrid& grid, const TorusPoint& node_offset = {});

struct TwoBodySpectrum {
  Band band;
  double continuum_tolerance = 0.0;
  std::vector<double> eigenvalues;  // all, ascending
  std::vector<double> below;        // < band.lo - tolerance
  std::vector<double> above;        // > band.hi + tolerance
};

struct SpectrumOptions {
  std::optional<double> continuum_tolerance;  // default: max_symbol_gap of the nodes, floored
  bool use_jacobi = false;
};

TwoBodySpectrum discrete_spectrum(const ModelConfig& model, Channel ch, const TorusPoint& k, const TorusGrid& grid,
                                  const SpectrumOptions& options = {});

// G_ij = w (2 pi)^{-3/2} v(p_i - p_j) / sqrt((E_i - z)(E_j - z)). Requires
// z <= band.lo; z == band.lo is accepted only if no node sits at the minimum.
SymmetricOperatorMatrix birman_schwinger(const ModelConfig& model, Channel ch, const TorusPoint& k, double z,
                                         const TorusGrid& grid);

// Number of eigenvalues of the Birman-Schwinger matrix strictly above 1.
int count_eigenvalues(const ModelConfig& model, Channel ch, const TorusPoint& k, double z, const TorusGrid& grid);

// det(I - V R0(k, z)) on the grid, for real z outside the band.
double fredholm_determinant(const ModelConfig& model, Channel ch, const TorusPoint& k, double z,
                            const TorusGrid& grid);

// Eigenvalues of the discrete h_alpha(k) below `threshold` (which must lie
// below every node symbol), located by bisection on the rank-reduced
// Birman-Schwinger count. Cost scales with the potential's support rather
// than with the grid dimension squared.
std::vector<double> bound_states_below(const ModelConfig& model, Channel ch, const TorusPoint& k,
                                       const TorusGrid& grid, double threshold, const TorusPoint& node_offset = {});

// Minimizers p_alpha(k) of E_k along a path, each refined from the grid argmin.
// Consecutive minimizers must lie within one grid step.
std::vector<Vec3> minimizer_track(const ModelConfig& model, Channel ch, const std::vector<TorusPoint>& k_path,
                                  const TorusGrid& grid);

}  // namespace latspec
