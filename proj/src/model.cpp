#include "latspec/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latspec/error.hpp"

namespace latspec {

namespace {

const double kFourierPrefactor = std::pow(kTwoPi, -1.5);

LatticeVector negate(const LatticeVector& s) { return {-s[0], -s[1], -s[2]}; }

std::string format_vector(const LatticeVector& s) {
  std::ostringstream os;
  os << "(" << s[0] << "," << s[1] << "," << s[2] << ")";
  return os.str();
}

Vec3 lift(const TorusPoint& p) { return p.c; }

TorusPoint reduce(const Vec3& v) { return {v[0], v[1], v[2]}; }

}  // namespace

int l1_norm(const LatticeVector& s) { return std::abs(s[0]) + std::abs(s[1]) + std::abs(s[2]); }

void LatticeCoefficients::set(const LatticeVector& s, double value) {
  if (value == 0.0)
    entries_.erase(s);
  else
    entries_[s] = value;
}

double LatticeCoefficients::entry(const LatticeVector& s) const {
  auto it = entries_.find(s);
  return it == entries_.end() ? 0.0 : it->second;
}

int LatticeCoefficients::support_radius() const {
  int r = -1;
  for (const auto& [s, v] : entries_) r = std::max(r, l1_norm(s));
  return r;
}

int LatticeCoefficients::max_axis_extent() const {
  int r = 0;
  for (const auto& [s, v] : entries_)
    for (int x : s) r = std::max(r, std::abs(x));
  return r;
}

bool LatticeCoefficients::is_even(double tol) const {
  for (const auto& [s, v] : entries_)
    if (std::abs(v - entry(negate(s))) > tol) return false;
  return true;
}

LatticeCoefficients LatticeCoefficients::scaled(double factor) const {
  LatticeCoefficients out;
  for (const auto& [s, v] : entries_) out.set(s, factor * v);
  return out;
}

LatticeCoefficients LatticeCoefficients::nearest_neighbor(double hopping) {
  LatticeCoefficients c;
  c.set({0, 0, 0}, 6.0 * hopping);
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {-1, 1}) {
      LatticeVector s{0, 0, 0};
      s[axis] = sign;
      c.set(s, -hopping);
    }
  return c;
}

LatticeCoefficients LatticeCoefficients::zero_range(double strength) {
  LatticeCoefficients c;
  c.set({0, 0, 0}, strength);
  return c;
}

bool ValidationReport::passed() const { return first_failure() == nullptr; }

const ValidationClause* ValidationReport::first_failure() const {
  for (const auto& c : clauses)
    if (!c.passed) return &c;
  return nullptr;
}

ValidationReport validate_dispersion(const LatticeCoefficients& c) {
  ValidationReport report;

  // the value may depend on |s|_1 only: every lattice vector of a given
  // l1-norm must carry the same coefficient, including implicit zeros.
  ValidationClause radial{"radial", true, ""};
  std::map<int, double> by_norm;
  for (const auto& [s, v] : c.entries()) by_norm.emplace(l1_norm(s), v);
  for (const auto& [r, value] : by_norm) {
    for (int x = -r; x <= r && radial.passed; ++x)
      for (int y = -(r - std::abs(x)); y <= r - std::abs(x) && radial.passed; ++y) {
        const int zabs = r - std::abs(x) - std::abs(y);
        for (int z : {-zabs, zabs}) {
          const LatticeVector s{x, y, z};
          if (c.entry(s) != value) {
            radial.passed = false;
            radial.detail = "entry" + format_vector(s) + " differs from other vectors with |s|=" + std::to_string(r);
            break;
          }
          if (zabs == 0) break;
        }
      }
    if (!radial.passed) break;
  }
  report.clauses.push_back(radial);

  ValidationClause support{"finite-support", true, ""};
  support.detail = "exponential decay truncated at |s|_1 <= " + std::to_string(std::max(0, c.support_radius()));
  report.clauses.push_back(support);

  ValidationClause sign{"sign", true, ""};
  for (int axis = 0; axis < 3 && sign.passed; ++axis)
    for (int dir : {-1, 1}) {
      LatticeVector s{0, 0, 0};
      s[axis] = dir;
      if (!(c.entry(s) < 0.0)) {
        sign.passed = false;
        sign.detail = "entry" + format_vector(s) + " must be negative";
        break;
      }
    }
  for (const auto& [s, v] : c.entries()) {
    if (!sign.passed) break;
    if (l1_norm(s) > 1 && v > 0.0) {
      sign.passed = false;
      sign.detail = "entry" + format_vector(s) + " must be <= 0";
    }
  }
  report.clauses.push_back(sign);
  return report;
}

ValidationReport validate_potential(const LatticeCoefficients& c) {
  ValidationReport report;
  ValidationClause nonneg{"nonnegative", true, ""};
  for (const auto& [s, v] : c.entries())
    if (v < 0.0) {
      nonneg.passed = false;
      nonneg.detail = "entry" + format_vector(s) + " is negative";
      break;
    }
  report.clauses.push_back(nonneg);

  ValidationClause even{"even", true, ""};
  for (const auto& [s, v] : c.entries())
    if (c.entry(negate(s)) != v) {
      even.passed = false;
      even.detail = "entry" + format_vector(s) + " != entry" + format_vector(negate(s));
      break;
    }
  report.clauses.push_back(even);

  ValidationClause support{"finite-support", true, ""};
  support.detail = "power decay truncated at |s|_1 <= " + std::to_string(std::max(0, c.support_radius()));
  report.clauses.push_back(support);
  return report;
}

double eval_dispersion(const LatticeCoefficients& c, const TorusPoint& p) { return eval_dispersion(c, p.c); }

double eval_dispersion(const LatticeCoefficients& c, const Vec3& p) {
  double sum = 0.0;
  for (const auto& [s, v] : c.entries())
    sum += v * std::cos(s[0] * p[0]) * std::cos(s[1] * p[1]) * std::cos(s[2] * p[2]);
  return sum;
}

Vec3 dispersion_gradient(const LatticeCoefficients& c, const Vec3& p) {
  Vec3 g{};
  for (const auto& [s, v] : c.entries()) {
    const Vec3 co{std::cos(s[0] * p[0]), std::cos(s[1] * p[1]), std::cos(s[2] * p[2])};
    const Vec3 si{std::sin(s[0] * p[0]), std::sin(s[1] * p[1]), std::sin(s[2] * p[2])};
    g[0] += -v * s[0] * si[0] * co[1] * co[2];
    g[1] += -v * s[1] * co[0] * si[1] * co[2];
    g[2] += -v * s[2] * co[0] * co[1] * si[2];
  }
  return g;
}

Mat3 dispersion_hessian(const LatticeCoefficients& c, const Vec3& p) {
  Mat3 h{};
  for (const auto& [s, v] : c.entries()) {
    const Vec3 co{std::cos(s[0] * p[0]), std::cos(s[1] * p[1]), std::cos(s[2] * p[2])};
    const Vec3 si{std::sin(s[0] * p[0]), std::sin(s[1] * p[1]), std::sin(s[2] * p[2])};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double term = v;
        for (int k = 0; k < 3; ++k) {
          if (k == i && k == j)
            term *= -static_cast<double>(s[k]) * s[k] * co[k];
          else if (k == i || k == j)
            term *= -static_cast<double>(s[k]) * si[k];
          else
            term *= co[k];
        }
        h[i][j] += term;
      }
  }
  return h;
}

Mat3 dispersion_hessian_at_zero(const LatticeCoefficients& c) { return dispersion_hessian(c, Vec3{0.0, 0.0, 0.0}); }

double effective_mass(const LatticeCoefficients& c) {
  double sum = 0.0;
  for (const auto& [s, v] : c.entries())
    sum += static_cast<double>(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]) * v;
  const double denom = -sum;
  if (!(denom > 0.0))
    throw Error(ErrorCode::DegenerateDispersion, "second moment of the dispersion is not negative");
  return 3.0 / denom;
}

double eval_potential(const LatticeCoefficients& c, const TorusPoint& p) {
  double sum = 0.0;
  for (const auto& [s, v] : c.entries()) sum += v * std::cos(s[0] * p[0] + s[1] * p[1] + s[2] * p[2]);
  return kFourierPrefactor * sum;
}

double potential_sqrt_kernel(const LatticeCoefficients& c, const TorusPoint& p) {
  double sum = 0.0;
  for (const auto& [s, v] : c.entries())
    sum += std::sqrt(std::max(v, 0.0)) * std::cos(s[0] * p[0] + s[1] * p[1] + s[2] * p[2]);
  return kFourierPrefactor * sum;
}

double potential_norm(const LatticeCoefficients& c) {
  double m = 0.0;
  for (const auto& [s, v] : c.entries()) m = std::max(m, std::abs(v));
  return m;
}

MassData mass_ratios(double m1, double m2, double m3) {
  const std::array<double, 3> m{m1, m2, m3};
  for (int i = 0; i < 3; ++i)
    if (!(m[i] > 0.0))
      throw Error(ErrorCode::InvalidMass, "mass m" + std::to_string(i + 1) + " must be positive");
  MassData md;
  md.m = m;
  md.total = m1 + m2 + m3;
  for (int b = 0; b < 3; ++b)
    for (int c = 0; c < 3; ++c)
      if (b != c) md.pair[b][c] = m[c] / (m[b] + m[c]);
  for (int a = 0; a < 3; ++a) md.single[a] = m[a] / md.total;
  return md;
}

Channel Channel::of(int alpha) {
  if (alpha < 0 || alpha > 2) throw Error(ErrorCode::OutOfDomain, "channel index must be 0, 1 or 2");
  return Channel{alpha, (alpha + 1) % 3, (alpha + 2) % 3};
}

RelativeCoordinates split_three(const TorusPoint& K, const std::array<TorusPoint, 3>& k, const MassData& md,
                                Channel ch) {
  const TorusPoint sum = torus_add(k[0], torus_add(k[1], k[2]));
  if (torus_distance(sum, K) > 1e-9)
    throw Error(ErrorCode::NotOnFiber, "momenta do not sum to the total quasi-momentum");
  const Vec3 kb = lift(k[ch.beta]);
  const Vec3 kc = lift(k[ch.gamma]);
  const Vec3 Kl = lift(K);
  const double lbc = md.pair[ch.beta][ch.gamma];
  const double lcb = md.pair[ch.gamma][ch.beta];
  const double la = md.single[ch.alpha];
  RelativeCoordinates rc;
  for (int i = 0; i < 3; ++i) {
    const double ka = Kl[i] - kb[i] - kc[i];
    rc.q[i] = lbc * kb[i] - lcb * kc[i];
    rc.p[i] = la * (kb[i] + kc[i]) - (1.0 - la) * ka;
  }
  return rc;
}

std::array<Vec3, 3> inverse_split_three_lifted(const Vec3& K, const Vec3& q, const Vec3& p, const MassData& md,
                                               Channel ch) {
  const double lbc = md.pair[ch.beta][ch.gamma];
  const double lcb = md.pair[ch.gamma][ch.beta];
  std::array<Vec3, 3> k{};
  for (int i = 0; i < 3; ++i) {
    k[ch.alpha][i] = md.single[ch.alpha] * K[i] - p[i];
    k[ch.beta][i] = md.single[ch.beta] * K[i] + lcb * p[i] + q[i];
    k[ch.gamma][i] = md.single[ch.gamma] * K[i] + lbc * p[i] - q[i];
  }
  return k;
}

std::array<TorusPoint, 3> inverse_split_three(const TorusPoint& K, const Vec3& q, const Vec3& p,
                                              const MassData& md, Channel ch) {
  const auto k = inverse_split_three_lifted(lift(K), q, p, md, ch);
  return {reduce(k[0]), reduce(k[1]), reduce(k[2])};
}

Vec3 split_two(const TorusPoint& k, const TorusPoint& k_beta, const TorusPoint& k_gamma, const MassData& md,
               Channel ch) {
  if (torus_distance(torus_add(k_beta, k_gamma), k) > 1e-9)
    throw Error(ErrorCode::NotOnFiber, "pair momenta do not sum to the pair quasi-momentum");
  const double lbc = md.pair[ch.beta][ch.gamma];
  const double lcb = md.pair[ch.gamma][ch.beta];
  Vec3 q{};
  for (int i = 0; i < 3; ++i) {
    const double kc = k[i] - k_beta[i];
    q[i] = lbc * k_beta[i] - lcb * kc;
  }
  return q;
}

std::array<TorusPoint, 2> inverse_split_two(const TorusPoint& k, const Vec3& q, const MassData& md, Channel ch) {
  const double lbc = md.pair[ch.beta][ch.gamma];
  const double lcb = md.pair[ch.gamma][ch.beta];
  Vec3 kb{}, kc{};
  for (int i = 0; i < 3; ++i) {
    kb[i] = lcb * k[i] + q[i];
    kc[i] = lbc * k[i] - q[i];
  }
  return {reduce(kb), reduce(kc)};
}

RelationCoefficients relative_relation(const MassData& md, int alpha, int beta) {
  if (alpha == beta || alpha < 0 || alpha > 2 || beta < 0 || beta > 2)
    throw Error(ErrorCode::OutOfDomain, "relation needs two distinct particle indices");
  const int gamma = 3 - alpha - beta;
  const bool beta_precedes = (beta + 1) % 3 == alpha;
  const double sign = beta_precedes ? 1.0 : -1.0;
  return {sign * md.pair[gamma][beta], sign};
}

ModelConfig ModelConfig::create(std::array<LatticeCoefficients, 3> dispersion,
                                std::array<LatticeCoefficients, 3> potential, int grid_n) {
  for (int a = 0; a < 3; ++a) {
    const auto report = validate_dispersion(dispersion[a]);
    if (const auto* f = report.first_failure())
      throw Error(ErrorCode::ValidationFailure, "dispersion " + std::to_string(a + 1) +
                                                    " fails dispersion requirement " + f->name + ": " + f->detail);
  }
  for (int a = 0; a < 3; ++a) {
    const auto report = validate_potential(potential[a]);
    if (const auto* f = report.first_failure())
      throw Error(ErrorCode::ValidationFailure, "potential " + std::to_string(a + 1) +
                                                    " fails potential requirement " + f->name + ": " + f->detail);
  }
  if (grid_n < 2) throw Error(ErrorCode::InvalidResolution, "grid_n must be >= 2");
  ModelConfig cfg;
  cfg.dispersion = std::move(dispersion);
  cfg.potential = std::move(potential);
  cfg.grid_n = grid_n;
  cfg.masses = mass_ratios(effective_mass(cfg.dispersion[0]), effective_mass(cfg.dispersion[1]),
                           effective_mass(cfg.dispersion[2]));
  return cfg;
}

ModelConfig ModelConfig::identical_nearest_neighbor(double strength, int grid_n) {
  const auto nn = LatticeCoefficients::nearest_neighbor(0.5);
  const auto zr = LatticeCoefficients::zero_range(strength);
  return create({nn, nn, nn}, {zr, zr, zr}, grid_n);
}

ModelConfig ModelConfig::without_potentials() const {
  ModelConfig out = *this;
  for (auto& v : out.potential) v = LatticeCoefficients{};
  return out;
}

ModelConfig ModelConfig::with_only_potential(int alpha) const {
  ModelConfig out = *this;
  for (int a = 0; a < 3; ++a)
    if (a != alpha) out.potential[a] = LatticeCoefficients{};
  return out;
}

double ModelConfig::potential_norm() const {
  double m = 0.0;
  for (const auto& v : potential) m = std::max(m, latspec::potential_norm(v));
  return m;
}

}  // namespace latspec
