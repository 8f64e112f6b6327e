#include "latspec/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "latspec/error.hpp"

namespace latspec {

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals, double merge_tol) {
  IntervalUnion u;
  for (auto& iv : intervals)
    if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const auto& iv : intervals) {
    if (!u.intervals_.empty() && iv.lo - u.intervals_.back().hi <= merge_tol)
      u.intervals_.back().hi = std::max(u.intervals_.back().hi, iv.hi);
    else
      u.intervals_.push_back(iv);
  }
  return u;
}

double IntervalUnion::lower() const {
  return intervals_.empty() ? std::numeric_limits<double>::quiet_NaN() : intervals_.front().lo;
}

double IntervalUnion::upper() const {
  return intervals_.empty() ? std::numeric_limits<double>::quiet_NaN() : intervals_.back().hi;
}

bool IntervalUnion::contains(double x, double widen) const {
  for (const auto& iv : intervals_)
    if (x >= iv.lo - widen && x <= iv.hi + widen) return true;
  return false;
}

IntervalUnion IntervalUnion::merged_with(const IntervalUnion& other, double merge_tol) const {
  std::vector<Interval> all = intervals_;
  all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
  return from_intervals(std::move(all), merge_tol);
}

IntervalUnion IntervalUnion::minus_open(double lo, double hi) const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    if (iv.hi <= lo || iv.lo >= hi) {
      out.push_back(iv);
      continue;
    }
    if (iv.lo <= lo) out.push_back({iv.lo, lo});
    if (iv.hi >= hi) out.push_back({hi, iv.hi});
  }
  return from_intervals(std::move(out));
}

namespace {

double distance_to(const IntervalUnion& u, double x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& iv : u.intervals()) {
    if (x >= iv.lo && x <= iv.hi) return 0.0;
    d = std::min(d, std::min(std::abs(x - iv.lo), std::abs(x - iv.hi)));
  }
  return d;
}

double directed(const IntervalUnion& a, const IntervalUnion& b) {
  // the farthest point of a from b is an endpoint of a or a midpoint of a gap of b inside a
  double d = 0.0;
  for (const auto& iv : a.intervals()) {
    d = std::max({d, distance_to(b, iv.lo), distance_to(b, iv.hi)});
    const auto& bi = b.intervals();
    for (std::size_t j = 0; j + 1 < bi.size(); ++j) {
      const double mid = 0.5 * (bi[j].hi + bi[j + 1].lo);
      if (mid >= iv.lo && mid <= iv.hi) d = std::max(d, distance_to(b, mid));
    }
  }
  return d;
}

}  // namespace

double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b) {
  return std::max(directed(a, b), directed(b, a));
}

IntervalUnion assemble_intervals(std::span<const double> samples, double gap_tol) {
  if (!(gap_tol > 0.0)) throw Error(ErrorCode::OutOfDomain, "gap tolerance must be positive");
  std::vector<Interval> points;
  points.reserve(samples.size());
  for (double s : samples) points.push_back({s, s});
  return IntervalUnion::from_intervals(std::move(points), gap_tol);
}

}  // namespace latspec
