#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "invlim/rational.hpp"
#include "invlim/system.hpp"
#include "invlim/words.hpp"

namespace invlim {

using AdjacencyMatrix = std::vector<std::vector<std::uint8_t>>;

/// true iff the directed graph of `adjacency` is strongly connected.
bool is_irreducible(const AdjacencyMatrix& adjacency);

/// A one-step shift of finite type: entry (i,j) = 1 iff symbol j may follow
/// symbol i. Every symbol must have an outgoing and an incoming edge.
class EdgeShiftSpec {
 public:
  EdgeShiftSpec(Alphabet alphabet, AdjacencyMatrix adjacency);

  static EdgeShiftSpec full_shift(std::size_t symbols);
  static EdgeShiftSpec golden_mean();

  const Alphabet& alphabet() const { return alphabet_; }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  std::size_t size() const { return adjacency_.size(); }
  bool allowed(Symbol a, Symbol b) const { return adjacency_[a][b] != 0; }
  bool is_full() const;

  bool admissible(const Word& w) const;
  bool admissible(const OneSidedWord& w) const;
  bool admissible(const TwoSidedWord& w) const;

  friend bool operator==(const EdgeShiftSpec&, const EdgeShiftSpec&) = default;

 private:
  Alphabet alphabet_;
  AdjacencyMatrix adjacency_;
};

inline bool is_irreducible(const EdgeShiftSpec& spec) { return is_irreducible(spec.adjacency()); }

/// All canonical admissible one-sided words with |preperiod| + |period| <= max_length,
/// sorted.
std::vector<OneSidedWord> eventually_periodic_words(const EdgeShiftSpec& spec, std::size_t max_length);

/// All canonical admissible two-sided words with |left| + |core| + |right| <= max_length
/// and core start in [min_start, max_start], sorted.
std::vector<TwoSidedWord> eventually_periodic_two_sided(const EdgeShiftSpec& spec, std::size_t max_length,
                                                        std::int64_t min_start, std::int64_t max_start);

/// An admissible eventually periodic continuation of the admissible word w:
/// w followed by the path that always takes the smallest allowed successor.
OneSidedWord greedy_extension(const EdgeShiftSpec& spec, const Word& w);

/// min over p in `sorted` of d(p, x) for the one-sided metric. In
/// lexicographic order the longest common prefix with x is attained next to
/// x's insertion point.
Rational min_distance_lexicographic(const std::vector<OneSidedWord>& sorted, const OneSidedWord& x);

/// The one-sided shift of finite type with the left shift and the metric
/// 2^-(first disagreement).
class ShiftSystem {
 public:
  using Point = OneSidedWord;

  explicit ShiftSystem(EdgeShiftSpec spec, std::string name = "sft");

  const EdgeShiftSpec& spec() const { return spec_; }
  std::string name() const { return name_; }

  Rational distance(const Point& x, const Point& y) const { return metric_one_sided(x, y); }
  Point map(const Point& x) const { return x.shifted(); }
  std::vector<Point> preimages(const Point& y) const;
  Rational diameter() const { return Rational(1); }
  /// Every admissible word with |pre| + |period| <= L plus one greedy
  /// continuation of every admissible cylinder of length L, where 2^-L <= h.
  std::vector<Point> net(const Rational& resolution) const;
  /// The shift is 2-Lipschitz.
  Rational modulus(int k, const Rational& out) const { return out * Rational::pow2_neg(k); }
  std::string format(const Point& p) const { return p.str(spec_.alphabet()); }
  Point parse(std::string_view text) const;
  Rational min_distance(const std::vector<Point>& sorted, const Point& x) const {
    return min_distance_lexicographic(sorted, x);
  }
  /// Points at distance exactly 2^-L <= delta from p: the symbol at index L
  /// changed, continued greedily.
  std::vector<Point> neighbours(const Point& p, const Rational& delta) const;

 private:
  EdgeShiftSpec spec_;
  std::string name_;
};

static_assert(DynamicalSystem<ShiftSystem>);

/// Smallest L >= 1 with 2^-L <= h.
int dyadic_level(const Rational& h);

}  // namespace invlim
