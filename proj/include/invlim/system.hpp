#pragma once

#include <algorithm>
#include <concepts>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/rational.hpp"

namespace invlim {

/// A compact metric system (Y, d, g) known through a representable dense
/// subset of points.
///
/// - distance: exact metric on representable points
/// - map: g
/// - preimages: every representable u with g(u) = y, sorted by the point order
/// - diameter: an upper bound on d
/// - net(h): a finite set of points such that every representable point lies
///   within h of one of them
/// - modulus(k, out): some in > 0 with d(x,y) <= in => d(g^k x, g^k y) <= out
/// - format/parse: textual notation of points
///
/// The point order (operator<) is the canonical order used whenever a
/// preimage has to be chosen.
template <class S>
concept DynamicalSystem =
    std::totally_ordered<typename S::Point> && std::copyable<typename S::Point> &&
    requires(const S& s, const typename S::Point& p, const Rational& r, int k, std::string_view text) {
      { s.name() } -> std::convertible_to<std::string>;
      { s.distance(p, p) } -> std::same_as<Rational>;
      { s.map(p) } -> std::same_as<typename S::Point>;
      { s.preimages(p) } -> std::same_as<std::vector<typename S::Point>>;
      { s.diameter() } -> std::same_as<Rational>;
      { s.net(r) } -> std::same_as<std::vector<typename S::Point>>;
      { s.modulus(k, r) } -> std::same_as<Rational>;
      { s.format(p) } -> std::same_as<std::string>;
      { s.parse(text) } -> std::same_as<typename S::Point>;
    };

template <DynamicalSystem S>
using PointOf = typename S::Point;

/// (beta, K, gamma) of the two axioms.
struct AxiomConstants {
  Rational beta;
  int K = 1;
  Rational gamma;

  /// Throws std::invalid_argument unless beta > 0, K >= 1, 0 < gamma < 1.
  void validate() const {
    if (beta.sign() <= 0) throw std::invalid_argument("constants: beta must be positive");
    if (K < 1) throw std::invalid_argument("constants: K must be >= 1");
    if (gamma.sign() <= 0 || gamma >= Rational(1)) throw std::invalid_argument("constants: gamma must lie in (0,1)");
  }
  friend bool operator==(const AxiomConstants&, const AxiomConstants&) = default;
};

/// min over u in `sorted` of d(u, x); uses the system's own search when it has one.
template <DynamicalSystem S>
Rational min_distance_to(const S& sys, const std::vector<PointOf<S>>& sorted, const PointOf<S>& x) {
  if constexpr (requires { { sys.min_distance(sorted, x) } -> std::same_as<Rational>; }) {
    return sys.min_distance(sorted, x);
  } else {
    if (sorted.empty()) throw std::invalid_argument("min_distance: empty set");
    Rational best = sys.distance(sorted.front(), x);
    for (const auto& u : sorted) {
      if (best.is_zero()) break;
      best = min(best, sys.distance(u, x));
    }
    return best;
  }
}

/// A finite sample of representable points together with the resolution it
/// is claimed to cover.
template <class P>
struct Net {
  Rational resolution;
  std::vector<P> points;
};

template <DynamicalSystem S>
Net<PointOf<S>> make_net(const S& sys, const Rational& resolution) {
  if (resolution.sign() <= 0) throw std::invalid_argument("net: resolution must be positive");
  return {resolution, sys.net(resolution)};
}

/// g^k(x).
template <DynamicalSystem S>
PointOf<S> iterate(const S& sys, PointOf<S> x, int k) {
  if (k < 0) throw std::invalid_argument("iterate: negative k");
  for (int i = 0; i < k; ++i) x = sys.map(x);
  return x;
}

/// {u : g^k(u) = y}, sorted and duplicate free.
template <DynamicalSystem S>
std::vector<PointOf<S>> preimages_k(const S& sys, const PointOf<S>& y, int k) {
  if (k < 1) throw std::invalid_argument("preimages_k: k must be >= 1");
  std::vector<PointOf<S>> layer{y};
  for (int i = 0; i < k; ++i) {
    std::set<PointOf<S>> next;
    for (const auto& p : layer)
      for (auto& u : sys.preimages(p)) next.insert(std::move(u));
    layer.assign(next.begin(), next.end());
  }
  return layer;
}

}  // namespace invlim
