#pragma once

#include <string>
#include <vector>

#include "invlim/shift.hpp"

namespace invlim {

/// The union of the full one-sided shifts on {0,1} and on {0,2}, as a
/// subspace of the full shift on {0,1,2}: words that never use both 1 and 2.
class Example2System {
 public:
  using Point = OneSidedWord;

  Example2System();

  static bool in_space(const OneSidedWord& w);

  std::string name() const { return "example2"; }
  Rational distance(const Point& x, const Point& y) const { return metric_one_sided(x, y); }
  Point map(const Point& x) const { return x.shifted(); }
  std::vector<Point> preimages(const Point& y) const;
  Rational diameter() const { return Rational(1); }
  /// Words in the space with |pre| + |period| <= L, plus every length-L
  /// cylinder of the space followed by zeros, where 2^-L <= h.
  std::vector<Point> net(const Rational& resolution) const;
  Rational modulus(int k, const Rational& out) const { return out * Rational::pow2_neg(k); }
  std::string format(const Point& p) const { return p.str(alphabet_); }
  Point parse(std::string_view text) const;
  Rational min_distance(const std::vector<Point>& sorted, const Point& x) const;

  const Alphabet& alphabet() const { return alphabet_; }

 private:
  Alphabet alphabet_;
};

static_assert(DynamicalSystem<Example2System>);

/// The usual candidate pair: x has a single 1 at N+K, y a single 2 at N.
struct Example2Pair {
  OneSidedWord x;
  OneSidedWord y;
};

/// Rejects N < 2K.
Example2Pair example2_stated_pair(int K, int N);
/// x = 1 0 0 0 ..., y has a single 2 at N. Rejects N < 2K.
Example2Pair example2_corrected_pair(int K, int N);

/// Exact Axiom-2 test of one (x, w) pair at epsilon = d(g^K x, w):
/// the complete set g^{-2K}(g^K w) with the distance of each member to x.
struct Example2Certificate {
  int K = 0;
  Rational gamma;
  OneSidedWord x;
  OneSidedWord y;
  Rational distance_gKx_y;  // epsilon
  Rational radius;          // gamma * epsilon
  OneSidedWord target;      // g^K(y)
  std::vector<OneSidedWord> preimages;
  std::vector<Rational> preimage_distances;
  /// True when no member of `preimages` lies within `radius` of x.
  bool falsified = false;
  /// A member of the ball when not falsified.
  std::vector<OneSidedWord> ball_members;
};

Example2Certificate certify_example2(const Example2System& sys, int K, const Rational& gamma,
                                     const Example2Pair& pair);

}  // namespace invlim
