#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/rational.hpp"
#include "invlim/system.hpp"

namespace invlim {

enum class Edge : std::uint8_t { kA = 0, kB = 1 };

/// A point on the wedge of two unit circles a and b. Position 0 on either
/// circle is the wedge point v, stored as (a, 0).
class SolenoidPoint {
 public:
  SolenoidPoint() = default;
  SolenoidPoint(Edge edge, Rational position);

  static SolenoidPoint wedge() { return {}; }

  Edge edge() const { return edge_; }
  const Rational& position() const { return pos_; }
  bool is_wedge() const { return pos_.is_zero(); }

  friend bool operator==(const SolenoidPoint&, const SolenoidPoint&) = default;
  friend std::strong_ordering operator<=>(const SolenoidPoint& a, const SolenoidPoint& b) {
    if (auto c = a.edge_ <=> b.edge_; c != 0) return c;
    return a.pos_ <=> b.pos_;
  }

 private:
  Edge edge_ = Edge::kA;
  Rational pos_;
};

/// The map a -> aab, b -> ab on the wedge: slope 3 on a, slope 2 on b.
class SolenoidSystem {
 public:
  using Point = SolenoidPoint;

  std::string name() const { return "solenoid"; }
  Rational distance(const Point& x, const Point& y) const;
  Point map(const Point& x) const;
  std::vector<Point> preimages(const Point& y) const;
  Rational diameter() const { return Rational(1); }
  /// Positions j/m on both circles with m = ceil(1/h).
  std::vector<Point> net(const Rational& resolution) const;
  /// g is 3-Lipschitz for the path metric.
  Rational modulus(int k, const Rational& out) const { return out / pow(Rational(3), k); }
  std::string format(const Point& p) const;
  /// "v", "a:1/3", "b:1/2".
  Point parse(std::string_view text) const;

  /// Closest point of `sorted` to x (sorted by the point order).
  Rational min_distance(const std::vector<Point>& sorted, const Point& x) const;
  /// The points 1/m away along the circle(s) through p, m = ceil(1/delta).
  std::vector<Point> neighbours(const Point& p, const Rational& delta) const;
};

static_assert(DynamicalSystem<SolenoidSystem>);

}  // namespace invlim
