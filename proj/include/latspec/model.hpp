#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "latspec/torus.hpp"

namespace latspec {

using LatticeVector = std::array<int, 3>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

int l1_norm(const LatticeVector& s);

// Finitely supported real coefficients s -> c(s) on Z^3. Zero entries are
// not stored.
class LatticeCoefficients {
 public:
  LatticeCoefficients() = default;

  void set(const LatticeVector& s, double value);
  double entry(const LatticeVector& s) const;
  const std::map<LatticeVector, double>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  // max |s|_1 over the support; -1 for the zero map.
  int support_radius() const;
  // max |s_i| over the support and axes.
  int max_axis_extent() const;
  bool is_even(double tol = 0.0) const;
  LatticeCoefficients scaled(double factor) const;

  // entry(0) = 6t, entry(s) = -t for the six unit vectors.
  static LatticeCoefficients nearest_neighbor(double hopping = 0.5);
  static LatticeCoefficients zero_range(double strength);

 private:
  std::map<LatticeVector, double> entries_;
};

struct ValidationClause {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationClause> clauses;

  bool passed() const;
  // First failing clause, or nullptr.
  const ValidationClause* first_failure() const;
};

// Clauses: "radial", "finite-support", "sign".
ValidationReport validate_dispersion(const LatticeCoefficients& c);
// Clauses: "nonnegative", "even", "finite-support".
ValidationReport validate_potential(const LatticeCoefficients& c);

// Cosine-product form of the dispersion's Fourier series.
double eval_dispersion(const LatticeCoefficients& c, const TorusPoint& p);
double eval_dispersion(const LatticeCoefficients& c, const Vec3& p);
Vec3 dispersion_gradient(const LatticeCoefficients& c, const Vec3& p);
Mat3 dispersion_hessian(const LatticeCoefficients& c, const Vec3& p);
Mat3 dispersion_hessian_at_zero(const LatticeCoefficients& c);

// 3 / (-sum_s |s|^2 c(s)); throws degenerate-dispersion when the sum is not negative.
double effective_mass(const LatticeCoefficients& c);

// (2 pi)^{-3/2} sum_s c(s) cos(p.s)
double eval_potential(const LatticeCoefficients& c, const TorusPoint& p);
// (2 pi)^{-3/2} sum_s sqrt(c(s)) cos(p.s)
double potential_sqrt_kernel(const LatticeCoefficients& c, const TorusPoint& p);

// Largest operator norm of the interaction: max_s c(s), the multiplier in
// position space.
double potential_norm(const LatticeCoefficients& c);

struct MassData {
  std::array<double, 3> m{};
  double total = 0.0;
  // pair[b][c] = m_c / (m_b + m_c), diagonal unused
  Mat3 pair{};
  // single[a] = m_a / M
  std::array<double, 3> single{};
};

MassData mass_ratios(double m1, double m2, double m3);

// Particle roles of a channel: alpha is the spectator, (beta, gamma) the
// interacting pair, taken in cyclic order. Indices are 0-based.
struct Channel {
  int alpha = 0;
  int beta = 1;
  int gamma = 2;

  static Channel of(int alpha);
};

struct RelativeCoordinates {
  Vec3 q{};
  Vec3 p{};
};

// (k1, k2, k3) on the fiber k1+k2+k3 = K -> (q_alpha, p_alpha).
//
// The coordinate maps have non-integer coefficients, so they act on lifts in
// R^3 rather than on T^3. The particle momenta are lifted so that their real
// sum equals K exactly; q and p are returned unreduced, which makes
// inverse_split_three an exact inverse.
RelativeCoordinates split_three(const TorusPoint& K, const std::array<TorusPoint, 3>& k, const MassData& md,
                                Channel ch);
// Returns (k1, k2, k3) in particle order, reduced into T^3.
std::array<TorusPoint, 3> inverse_split_three(const TorusPoint& K, const Vec3& q, const Vec3& p,
                                              const MassData& md, Channel ch);
std::array<Vec3, 3> inverse_split_three_lifted(const Vec3& K, const Vec3& q, const Vec3& p, const MassData& md,
                                               Channel ch);

// (k_beta, k_gamma) with k_beta + k_gamma = k -> q_alpha (unreduced lift).
Vec3 split_two(const TorusPoint& k, const TorusPoint& k_beta, const TorusPoint& k_gamma, const MassData& md,
               Channel ch);
std::array<TorusPoint, 2> inverse_split_two(const TorusPoint& k, const Vec3& q, const MassData& md, Channel ch);

// Coefficients of q_alpha = d * p_alpha + e * p_beta for beta != alpha. The
// sign is + when beta precedes alpha in the cyclic order 1<2<3<1, - otherwise.
struct RelationCoefficients {
  double d = 0.0;
  double e = 0.0;
};
RelationCoefficients relative_relation(const MassData& md, int alpha, int beta);

struct ModelConfig {
  std::array<LatticeCoefficients, 3> dispersion;
  // potential[a] couples the pair (beta, gamma) of channel a.
  std::array<LatticeCoefficients, 3> potential;
  int grid_n = 8;
  MassData masses;

  // Validates every table and derives the masses. Throws validation-failure
  // naming the failing table and clause.
  static ModelConfig create(std::array<LatticeCoefficients, 3> dispersion,
                            std::array<LatticeCoefficients, 3> potential, int grid_n);

  // Three identical particles with nearest-neighbour hopping 1/2 and a
  // zero-range attraction of the given strength in every pair.
  static ModelConfig identical_nearest_neighbor(double strength, int grid_n = 8);

  ModelConfig without_potentials() const;
  ModelConfig with_only_potential(int alpha) const;

  double dispersion_at(int particle, const Vec3& k) const { return eval_dispersion(dispersion[particle], k); }
  double potential_norm() const;
};

}  // namespace latspec
