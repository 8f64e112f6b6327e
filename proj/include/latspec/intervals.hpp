#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace latspec {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Finite union of closed intervals, kept sorted and pairwise disjoint.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  // Sorts and merges intervals whose gap is <= merge_tol.
  static IntervalUnion from_intervals(std::vector<Interval> intervals, double merge_tol = 0.0);

  const std::vector<Interval>& intervals() const { return intervals_; }
  std::size_t count() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  double lower() const;
  double upper() const;

  bool contains(double x, double widen = 0.0) const;
  // Union with another set, merging across gaps <= merge_tol.
  IntervalUnion merged_with(const IntervalUnion& other, double merge_tol = 0.0) const;
  // Removes the open interval (lo, hi) and keeps the closure of the rest.
  IntervalUnion minus_open(double lo, double hi) const;

 private:
  std::vector<Interval> intervals_;
};

// Hausdorff distance between two non-empty unions.
double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b);

// Sorts the samples and joins consecutive samples whose gap is <= gap_tol into
// one closed interval. Throws out-of-domain when gap_tol <= 0.
IntervalUnion assemble_intervals(std::span<const double> samples, double gap_tol);

}  // namespace latspec
