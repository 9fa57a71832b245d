#pragma once

#include <span>
#include <vector>

namespace mfg {

// A point or velocity in R^d.
using Vec = std::vector<double>;

// Axis-aligned closed box [lo, hi] in which all agents move.
struct Domain {
  Vec lo;
  Vec hi;

  Domain(Vec lo_box, Vec hi_box);

  int dim() const { return static_cast<int>(lo.size()); }
  // Largest side length, used to scale optimizer steps.
  double extent() const;
  bool contains(std::span<const double> x, double tol = 0.0) const;
};

// Coordinate-wise clamp into the box. Identity on interior points,
// idempotent and nonexpansive.
Vec project_to_domain(const Domain& domain, std::span<const double> x);

// Closed region an agent tries to reach: an axis slab, a box, or a ball.
class TargetSet {
 public:
  enum class Kind { Slab, Box, Ball };
  enum class Side { Geq, Leq };  // which half-space a slab keeps

  static TargetSet slab(int coord, double threshold, Side side);
  static TargetSet box(Vec lo, Vec hi);
  static TargetSet ball(Vec center, double radius);

  Kind kind() const { return kind_; }

  // Euclidean distance to the set, negated inside (depth), zero on the
  // boundary. Exact for all three variants.
  double signed_distance(std::span<const double> x) const;

  // Euclidean projection onto the set; identity for members. For the
  // slab variant this is the same-coordinate foot point.
  Vec nearest_point(std::span<const double> x) const;

  // Throws std::invalid_argument unless the set is nonempty and lies in
  // the closed domain (slabs: the cut plane must intersect the box).
  void check_within(const Domain& domain) const;

  // Variant accessors (valid only for the matching kind).
  int slab_coord() const { return coord_; }
  double slab_threshold() const { return threshold_; }
  Side slab_side() const { return side_; }
  const Vec& box_lo() const { return lo_; }
  const Vec& box_hi() const { return hi_; }
  const Vec& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

 private:
  TargetSet() = default;

  Kind kind_ = Kind::Slab;
  int coord_ = 0;
  double threshold_ = 0.0;
  Side side_ = Side::Geq;
  Vec lo_, hi_;
  Vec center_;
  double radius_ = 0.0;
};

// Width of the smooth indicator ramp around a target set.
struct IndicatorSmoothing {
  double rho = 0.05;
};

// Cubic smoothstep: 0 for u <= 0, 3u^2 - 2u^3 on (0,1), 1 for u >= 1.
double smoothstep(double u);

// Smooth stand-in for the indicator of "not yet arrived":
// chi = smoothstep(signed_distance / rho). Exactly 0 on and inside the
// target, 1 at distance >= rho, C^1 in between.
double chi(const TargetSet& target, const IndicatorSmoothing& s,
           std::span<const double> x);

}  // namespace mfg
