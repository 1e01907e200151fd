#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invlim/rational.hpp"

namespace invlim {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

/// Symbol tokens. Each token is a single character so that words can be
/// written as plain strings, e.g. "01(10)".
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<char> tokens);
  /// "0,1,2" style list.
  static Alphabet parse(std::string_view csv);
  /// '0', '1', ..., '0'+n-1.
  static Alphabet digits(std::size_t n);

  std::size_t size() const { return tokens_.size(); }
  char token(Symbol s) const { return tokens_.at(s); }
  Symbol symbol(char token) const;
  const std::vector<char>& tokens() const { return tokens_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<char> tokens_;
};

/// Eventually periodic one-sided word preperiod . period period period ...
///
/// Always canonical: the period is primitive and the preperiod is as short as
/// possible, so structural equality is equality of infinite words.
class OneSidedWord {
 public:
  OneSidedWord() : per_{0} {}
  OneSidedWord(Word preperiod, Word period);

  /// Parses "pre(per)"; a bare "w" means "(w)".
  static OneSidedWord parse(std::string_view text, const Alphabet& alphabet);

  const Word& preperiod() const { return pre_; }
  const Word& period() const { return per_; }
  Symbol at(std::size_t n) const {
    return n < pre_.size() ? pre_[n] : per_[(n - pre_.size()) % per_.size()];
  }
  /// First n symbols.
  Word prefix(std::size_t n) const;

  /// Left shift: drop index 0.
  OneSidedWord shifted() const;
  /// s . this
  OneSidedWord prepended(Symbol s) const;
  /// w . this
  OneSidedWord prepended(std::span<const Symbol> w) const;

  /// Index of the first disagreement, or npos when equal.
  static std::size_t first_difference(const OneSidedWord& a, const OneSidedWord& b);
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::string str(const Alphabet& alphabet) const;

  friend bool operator==(const OneSidedWord&, const OneSidedWord&) = default;
  friend std::strong_ordering operator<=>(const OneSidedWord& a, const OneSidedWord& b);

 private:
  void canonicalize();

  Word pre_;
  Word per_;
};

/// 2^-min{n : x_n != y_n}, zero for equal words.
Rational metric_one_sided(const OneSidedWord& x, const OneSidedWord& y);
inline OneSidedWord shift_map(const OneSidedWord& x) { return x.shifted(); }

/// Eventually periodic bi-infinite word  ... L L L core R R R ...
/// with core[0] sitting at index `start`.
///
/// Canonical: L and R primitive; the core absorbs no symbol that continues a
/// tail; a purely periodic word (empty core, L == R) is rotated so that the
/// boundary sits at index 0.
class TwoSidedWord {
 public:
  TwoSidedWord() : left_{0}, right_{0} {}
  TwoSidedWord(Word left, Word core, Word right, std::int64_t start);

  /// Parses "(left)core.core(right)"; the dot marks index 0, i.e. the symbol
  /// right after the dot has index 0. The dot may sit inside a period, e.g.
  /// "(01).(01)".
  static TwoSidedWord parse(std::string_view text, const Alphabet& alphabet);

  Symbol at(std::int64_t n) const;
  const Word& left() const { return left_; }
  const Word& core() const { return core_; }
  const Word& right() const { return right_; }
  std::int64_t start() const { return start_; }

  /// Smallest and one-past-largest index covered by the core. Outside this
  /// window the word follows its tails.
  std::int64_t core_begin() const { return start_; }
  std::int64_t core_end() const { return start_ + static_cast<std::int64_t>(core_.size()); }

  /// The ray (s_from, s_from+1, ...) as a one-sided word.
  OneSidedWord ray(std::int64_t from) const;

  std::string str(const Alphabet& alphabet) const;

  friend bool operator==(const TwoSidedWord&, const TwoSidedWord&) = default;
  friend std::strong_ordering operator<=>(const TwoSidedWord& a, const TwoSidedWord& b);

 private:
  void canonicalize();

  Word left_;
  Word core_;
  Word right_;
  std::int64_t start_ = 0;
};

/// (shift_two_sided(s, n))_i = s_{i+n}; n = 1 is the left shift.
TwoSidedWord shift_two_sided(const TwoSidedWord& s, std::int64_t n);

/// Sum over n in Z of 2^-|n| [s_n != t_n], in closed form.
Rational metric_two_sided(const TwoSidedWord& s, const TwoSidedWord& t);

/// Shortest primitive root of a nonempty word.
Word primitive_root(const Word& w);

struct OneSidedWordHash {
  std::size_t operator()(const OneSidedWord& w) const noexcept;
};
struct TwoSidedWordHash {
  std::size_t operator()(const TwoSidedWord& w) const noexcept;
};

}  // namespace invlim
