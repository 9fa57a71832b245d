#include "mfg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace mfg {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Domain::Domain(Vec lo_box, Vec hi_box) : lo(std::move(lo_box)), hi(std::move(hi_box)) {
  require(!lo.empty(), "domain: dimension must be positive");
  require(lo.size() == hi.size(), "domain: lo and hi must have equal dimension");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    require(lo[k] < hi[k], "domain: lo[" + std::to_string(k) + "] must be < hi[" + std::to_string(k) + "]");
  }
}

double Domain::extent() const {
  double e = 0.0;
  for (std::size_t k = 0; k < lo.size(); ++k) e = std::max(e, hi[k] - lo[k]);
  return e;
}

bool Domain::contains(std::span<const double> x, double tol) const {
  if (x.size() != lo.size()) return false;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
  }
  return true;
}

Vec project_to_domain(const Domain& domain, std::span<const double> x) {
  Vec p(x.begin(), x.end());
  for (std::size_t k = 0; k < p.size(); ++k) {
    p[k] = std::clamp(p[k], domain.lo[k], domain.hi[k]);
  }
  return p;
}

TargetSet TargetSet::slab(int coord, double threshold, Side side) {
  require(coord >= 0, "target.slab: coord must be nonnegative");
  require(std::isfinite(threshold), "target.slab: threshold must be finite");
  TargetSet t;
  t.kind_ = Kind::Slab;
  t.coord_ = coord;
  t.threshold_ = threshold;
  t.side_ = side;
  return t;
}

TargetSet TargetSet::box(Vec lo, Vec hi) {
  require(!lo.empty() && lo.size() == hi.size(), "target.box: lo and hi must have equal positive dimension");
  for (std::size_t k = 0; k < lo.size(); ++k) {
    require(lo[k] <= hi[k], "target.box: lo[" + std::to_string(k) + "] must be <= hi[" + std::to_string(k) + "]");
  }
  TargetSet t;
  t.kind_ = Kind::Box;
  t.lo_ = std::move(lo);
  t.hi_ = std::move(hi);
  return t;
}

TargetSet TargetSet::ball(Vec center, double radius) {
  require(!center.empty(), "target.ball: center must have positive dimension");
  require(radius > 0.0, "target.ball: radius must be positive");
  TargetSet t;
  t.kind_ = Kind::Ball;
  t.center_ = std::move(center);
  t.radius_ = radius;
  return t;
}

double TargetSet::signed_distance(std::span<const double> x) const {
  switch (kind_) {
    case Kind::Slab:
      return side_ == Side::Geq ? threshold_ - x[coord_] : x[coord_] - threshold_;
    case Kind::Box: {
      double out2 = 0.0;
      double depth = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < lo_.size(); ++k) {
        const double below = lo_[k] - x[k];
        const double above = x[k] - hi_[k];
        const double d = std::max(below, above);
        if (d > 0.0) out2 += d * d;
        depth = std::min(depth, -d);
      }
      if (out2 > 0.0) return std::sqrt(out2);
      return -depth;
    }
    case Kind::Ball: {
      double r2 = 0.0;
      for (std::size_t k = 0; k < center_.size(); ++k) {
        const double d = x[k] - center_[k];
        r2 += d * d;
      }
      return std::sqrt(r2) - radius_;
    }
  }
  return 0.0;  // unreachable
}

Vec TargetSet::nearest_point(std::span<const double> x) const {
  Vec p(x.begin(), x.end());
  switch (kind_) {
    case Kind::Slab:
      if (side_ == Side::Geq ? p[coord_] < threshold_ : p[coord_] > threshold_) {
        p[coord_] = threshold_;
      }
      return p;
    case Kind::Box:
      for (std::size_t k = 0; k < lo_.size(); ++k) p[k] = std::clamp(p[k], lo_[k], hi_[k]);
      return p;
    case Kind::Ball: {
      double r2 = 0.0;
      for (std::size_t k = 0; k < center_.size(); ++k) {
        const double d = p[k] - center_[k];
        r2 += d * d;
      }
      const double r = std::sqrt(r2);
      if (r <= radius_) return p;
      const double scale = radius_ / r;
      for (std::size_t k = 0; k < center_.size(); ++k) {
        p[k] = center_[k] + scale * (p[k] - center_[k]);
      }
      return p;
    }
  }
  return p;  // unreachable
}

void TargetSet::check_within(const Domain& domain) const {
  switch (kind_) {
    case Kind::Slab:
      require(coord_ < domain.dim(), "target.slab: coord exceeds domain dimension");
      require(threshold_ >= domain.lo[coord_] && threshold_ <= domain.hi[coord_],
              "target.slab: threshold outside the domain");
      break;
    case Kind::Box:
      require(static_cast<int>(lo_.size()) == domain.dim(), "target.box: dimension mismatch with domain");
      for (std::size_t k = 0; k < lo_.size(); ++k) {
        require(lo_[k] >= domain.lo[k] && hi_[k] <= domain.hi[k], "target.box: box not contained in the domain");
      }
      break;
    case Kind::Ball:
      require(static_cast<int>(center_.size()) == domain.dim(), "target.ball: dimension mismatch with domain");
      for (std::size_t k = 0; k < center_.size(); ++k) {
        require(center_[k] - radius_ >= domain.lo[k] && center_[k] + radius_ <= domain.hi[k],
                "target.ball: ball not contained in the domain");
      }
      break;
  }
}

double smoothstep(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * (3.0 - 2.0 * u);
}

double chi(const TargetSet& target, const IndicatorSmoothing& s, std::span<const double> x) {
  return smoothstep(target.signed_distance(x) / s.rho);
}

}  // namespace mfg
