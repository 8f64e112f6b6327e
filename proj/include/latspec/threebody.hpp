#pragma once

#include <array>
#include <vector>

#include "latspec/channel.hpp"
#include "latspec/intervals.hpp"
#include "latspec/kinetic.hpp"
#include "latspec/linalg.hpp"
#include "latspec/twobody.hpp"

namespace latspec {

struct EssentialSpectrum {
  TorusPoint K;
  IntervalUnion union_set;
  std::array<IntervalUnion, 3> channel_parts;  // sigma_two intervals united with the band
  std::array<ChannelSpectrum, 3> channels;
  ThreeBodyBand band;
  // Widening used when testing membership of eigenvalues computed on the
  // same grid: the largest continuum tolerance of the three-body symbol and
  // of every channel fiber.
  double tolerance = 0.0;
};

// gap_tol <= 0 selects each channel's default.
EssentialSpectrum essential_spectrum(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                                     double gap_tol = 0.0);

inline constexpr int kFullMatrixMaxN = 4;

// H(K) = H0(K) - V1 - V2 - V3 on FiberLattice(grid, K), dimension n^6.
// Throws invalid-resolution above max_n.
SymmetricOperatorMatrix build_full_H(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                                     int max_n = kFullMatrixMaxN);

struct OracleReport {
  std::vector<double> eigenvalues;
  double tolerance = 0.0;
  std::size_t contained = 0;
  std::vector<double> isolated_below;    // below the union
  std::vector<double> isolated_between;  // in a gap of the union
  std::vector<double> violations;        // above the union
  // (contained + isolated below) / total
  double containment_fraction = 0.0;
};

OracleReport oracle_compare(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid,
                            const EssentialSpectrum& essential);
OracleReport oracle_compare(const ModelConfig& model, const TorusPoint& K, const TorusGrid& grid);

// T(K, z) restricted to the range of V^{1/2} = V_1^{1/2} + V_2^{1/2} + V_3^{1/2}.
//
// Each V_alpha^{1/2} acts on FiberLattice(grid, K) as S_alpha = U diag(lambda) U^T
// in the node index at fixed spectator, so T_{alpha beta} = B_alpha Tr_{alpha beta} B_beta^T
// with B_alpha the isometry onto the retained eigenvectors. Off the range,
// I - T is the identity, so the singular values of I - T are those of
// I - Tr together with 1.
struct FaddeevOperator {
  double z = 0.0;
  std::array<std::size_t, 3> rank{};  // retained eigenvectors per spectator
  std::array<std::size_t, 3> dims{};  // n^3 * rank
  std::array<std::array<linalg::Matrix, 3>, 3> blocks;
  // Largest condition number of the per-spectator blocks I - V^{1/2} R0 V^{1/2}.
  double max_condition = 1.0;
  std::size_t full_dim = 0;  // 3 n^6

  std::size_t reduced_dim() const { return dims[0] + dims[1] + dims[2]; }
  linalg::Matrix identity_minus_T() const;
  double block_frobenius_norm(int a, int b) const { return blocks[a][b].frobenius_norm(); }
};

// Throws out-of-domain unless z lies below every fiber symbol value,
// incompatible-discretization when a potential's support aliases on the
// grid, and z-in-channel-spectrum when some I - V^{1/2} R0 V^{1/2} block is
// numerically singular.
FaddeevOperator faddeev_operator(const ModelConfig& model, const TorusPoint& K, double z, const TorusGrid& grid);

double smallest_singular_value(const FaddeevOperator& op);

struct FaddeevScanPoint {
  double z = 0.0;
  double sigma_min = 0.0;
};

struct FaddeevCandidate {
  double z = 0.0;
  double sigma_min = 0.0;
  bool below_threshold = false;
};

inline constexpr double kFaddeevCandidateThreshold = 1e-6;

std::vector<FaddeevScanPoint> faddeev_eigenvalue_scan(const ModelConfig& model, const TorusPoint& K,
                                                      const std::vector<double>& z_values, const TorusGrid& grid);
// Local minima of the scan refined by golden-section search between the
// neighbouring samples.
std::vector<FaddeevCandidate> faddeev_candidates(const ModelConfig& model, const TorusPoint& K,
                                                 const std::vector<FaddeevScanPoint>& scan, const TorusGrid& grid,
                                                 double threshold = kFaddeevCandidateThreshold);

struct FiberEquivalenceReport {
  std::size_t full_dim = 0;
  std::size_t block_count = 0;
  std::size_t fiber_eigenvalue_count = 0;
  double max_deviation = 0.0;
};

// Full two-particle operator of channel ch on the (k_beta, k_gamma) grid
// against the union of build_h_matrix over all total momenta k in the grid.
FiberEquivalenceReport fiber_equivalence_test(const ModelConfig& model, Channel ch, const TorusGrid& grid);

}  // namespace latspec
