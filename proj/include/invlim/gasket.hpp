#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/rational.hpp"
#include "invlim/system.hpp"

namespace invlim {

/// Corner / sub-gasket selector. A triangle's corners are listed as
/// (top, left, right); its sub-gaskets sit at the same three positions.
enum class Corner : std::uint8_t { kTop = 0, kLeft = 1, kRight = 2 };

inline constexpr int kGasketComponents = 6;
inline constexpr int kGasketMaxLevel = 40;

/// Corner labels of the six gaskets and the target of every sub-gasket.
/// Components are numbered 1..6 in text and 0..5 in the arrays.
struct GasketLabelTable {
  /// labels[c][corner] in {'A','B','C'}
  std::array<std::array<char, 3>, kGasketComponents> labels{};
  /// targets[c][sub] in 0..5
  std::array<std::array<int, 3>, kGasketComponents> targets{};

  /// Labels of the six distinguished-vertex figures; targets derived.
  static GasketLabelTable standard();
  /// Derives every target as the unique component whose corner labels match
  /// the images of the sub-gasket's corners. Throws when a target is missing
  /// or ambiguous.
  static GasketLabelTable from_labels(const std::array<std::array<char, 3>, kGasketComponents>& labels);

  /// Labels of the images of the three corners of sub-gasket `sub` of c:
  /// big-triangle corners keep their label, edge midpoints go to A (left
  /// edge), B (bottom edge), C (right edge).
  std::array<char, 3> image_labels(int c, Corner sub) const;

  /// Throws std::invalid_argument naming the first sub-gasket whose target's
  /// corner labels differ from image_labels, i.e. where the map is not well
  /// defined on the glued vertices.
  void validate() const;

  friend bool operator==(const GasketLabelTable&, const GasketLabelTable&) = default;
};

/// A vertex of the level-n skeleton of one of the six gaskets, in integer
/// barycentric weights (top, left, right) summing to 2^n with n minimal, or
/// one of the glued vertices A, B, C.
class GasketPoint {
 public:
  using Weights = std::array<std::int64_t, 3>;

  GasketPoint() = default;
  static GasketPoint glued(char label);
  /// Canonicalizes: reduces the level and turns corners into glued vertices.
  static GasketPoint vertex(const GasketLabelTable& table, int component, Weights w, int level);

  bool is_glued() const { return component_ == 0; }
  char label() const { return static_cast<char>('A' + label_); }
  /// 1..6, or 0 for a glued vertex.
  int component() const { return component_; }
  int level() const { return level_; }
  const Weights& weights() const { return w_; }

  friend bool operator==(const GasketPoint&, const GasketPoint&) = default;
  friend auto operator<=>(const GasketPoint&, const GasketPoint&) = default;

 private:
  std::uint8_t component_ = 0;
  std::uint8_t label_ = 0;
  int level_ = 0;
  Weights w_{};
};

/// true iff w (summing to 2^level) is a vertex of the level-`level` gasket.
bool gasket_vertex_valid(const GasketPoint::Weights& w, int level);

/// Six Sierpinski gaskets glued at A, B, C with the shortest-path metric (unit
/// sides) and the scale-by-2 map.
class GasketSystem {
 public:
  using Point = GasketPoint;

  explicit GasketSystem(GasketLabelTable table = GasketLabelTable::standard());

  const GasketLabelTable& table() const { return table_; }

  std::string name() const { return "gasket"; }
  Rational distance(const Point& x, const Point& y) const;
  Point map(const Point& x) const;
  /// Image of a non-glued point computed inside one particular sub-gasket that
  /// contains it; used to test that the map is well defined.
  Point map_in_sub(const Point& x, Corner sub) const;
  /// Sub-gaskets of x's component that contain x (one or two).
  std::vector<Corner> containing_subs(const Point& x) const;
  std::vector<Point> preimages(const Point& y) const;
  /// Each point lies within 1/2 of a corner, and corners are within 1 of each other.
  Rational diameter() const { return Rational(2); }
  /// All vertices of level <= L, where 2^-L <= h.
  std::vector<Point> net(const Rational& resolution) const;
  /// Piecewise scaling by 2 along paths.
  Rational modulus(int k, const Rational& out) const { return out * Rational::pow2_neg(k); }
  /// "A", "B", "C" or "Y<c>:<address>.<corner>" with letters t, l, r, e.g.
  /// "Y1:tl.r" is the right corner of the left sub-gasket of the top
  /// sub-gasket of Y1.
  std::string format(const Point& p) const;
  Point parse(std::string_view text) const;

  /// Skeleton neighbours of p at the level L >= level(p) with 2^-L <= delta.
  std::vector<Point> neighbours(const Point& p, const Rational& delta) const;

  /// Maximum number of g-preimages over all points.
  int max_preimage_count() const;

 private:
  std::int64_t glued_distance(int a, int b) const { return glued_dist_[a][b]; }

  GasketLabelTable table_;
  std::array<std::array<std::int64_t, 3>, 3> glued_dist_{};
};

static_assert(DynamicalSystem<GasketSystem>);

}  // namespace invlim
