#include "invlim/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace invlim {

namespace {

void rotate_left(Word& w) { std::rotate(w.begin(), w.begin() + 1, w.end()); }
void rotate_right(Word& w) { std::rotate(w.rbegin(), w.rbegin() + 1, w.rend()); }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::size_t hash_word(const Word& w, std::size_t seed) {
  for (Symbol s : w) seed ^= s + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  return seed;
}

void append_tokens(std::string& out, const Word& w, const Alphabet& a) {
  for (Symbol s : w) out.push_back(a.token(s));
}

}  // namespace

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<char> tokens) : tokens_(std::move(tokens)) {
  if (tokens_.empty()) throw std::invalid_argument("alphabet: empty");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    char c = tokens_[i];
    if (c == '(' || c == ')' || c == '.' || c == ' ' || c == ',')
      throw std::invalid_argument(std::string("alphabet: reserved token '") + c + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (tokens_[j] == c) throw std::invalid_argument(std::string("alphabet: duplicate token '") + c + "'");
  }
}

Alphabet Alphabet::parse(std::string_view csv) {
  std::vector<char> tokens;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string_view tok = csv.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    if (tok.size() != 1) throw std::invalid_argument("alphabet: tokens must be single characters, got '" + std::string(tok) + "'");
    tokens.push_back(tok.front());
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Alphabet(std::move(tokens));
}

Alphabet Alphabet::digits(std::size_t n) {
  if (n == 0 || n > 10) throw std::invalid_argument("alphabet: digits(n) needs 1 <= n <= 10");
  std::vector<char> t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(static_cast<char>('0' + i));
  return Alphabet(std::move(t));
}

Symbol Alphabet::symbol(char token) const {
  for (std::size_t i = 0; i < tokens_.size(); ++i)
    if (tokens_[i] == token) return static_cast<Symbol>(i);
  throw std::invalid_argument(std::string("unknown symbol '") + token + "'");
}

Word primitive_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("primitive_root: empty word");
  const std::size_t n = w.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = w[i] == w[i - p];
    if (ok) return Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
  }
  return w;
}

// ------------------------------------------------------------ OneSidedWord

OneSidedWord::OneSidedWord(Word preperiod, Word period) : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw std::invalid_argument("OneSidedWord: empty period");
  canonicalize();
}

void OneSidedWord::canonicalize() {
  per_ = primitive_root(per_);
  while (!pre_.empty() && pre_.back() == per_.back()) {
    rotate_right(per_);
    pre_.pop_back();
  }
}

OneSidedWord OneSidedWord::parse(std::string_view text, const Alphabet& alphabet) {
  auto open = text.find('(');
  Word pre, per;
  if (open == std::string_view::npos) {
    for (char c : text) per.push_back(alphabet.symbol(c));
  } else {
    auto close = text.find(')', open);
    if (close == std::string_view::npos || close + 1 != text.size())
      throw std::invalid_argument("word: expected 'pre(period)', got '" + std::string(text) + "'");
    for (char c : text.substr(0, open)) pre.push_back(alphabet.symbol(c));
    for (char c : text.substr(open + 1, close - open - 1)) per.push_back(alphabet.symbol(c));
  }
  if (per.empty()) throw std::invalid_argument("word: empty period in '" + std::string(text) + "'");
  return OneSidedWord(std::move(pre), std::move(per));
}

Word OneSidedWord::prefix(std::size_t n) const {
  Word w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
  return w;
}

OneSidedWord OneSidedWord::shifted() const {
  OneSidedWord r = *this;
  if (!r.pre_.empty()) {
    r.pre_.erase(r.pre_.begin());
  } else {
    rotate_left(r.per_);
  }
  return r;  // still canonical
}

OneSidedWord OneSidedWord::prepended(Symbol s) const {
  OneSidedWord r = *this;
  r.pre_.insert(r.pre_.begin(), s);
  r.canonicalize();
  return r;
}

OneSidedWord OneSidedWord::prepended(std::span<const Symbol> w) const {
  OneSidedWord r = *this;
  r.pre_.insert(r.pre_.begin(), w.begin(), w.end());
  r.canonicalize();
  return r;
}

std::size_t OneSidedWord::first_difference(const OneSidedWord& a, const OneSidedWord& b) {
  const std::size_t bound = std::max(a.pre_.size(), b.pre_.size()) + std::lcm(a.per_.size(), b.per_.size());
  for (std::size_t n = 0; n < bound; ++n)
    if (a.at(n) != b.at(n)) return n;
  return npos;
}

std::strong_ordering operator<=>(const OneSidedWord& a, const OneSidedWord& b) {
  std::size_t n = OneSidedWord::first_difference(a, b);
  if (n == OneSidedWord::npos) return std::strong_ordering::equal;
  return a.at(n) <=> b.at(n);
}

std::string OneSidedWord::str(const Alphabet& alphabet) const {
  std::string s;
  append_tokens(s, pre_, alphabet);
  s.push_back('(');
  append_tokens(s, per_, alphabet);
  s.push_back(')');
  return s;
}

Rational metric_one_sided(const OneSidedWord& x, const OneSidedWord& y) {
  std::size_t n = OneSidedWord::first_difference(x, y);
  if (n == OneSidedWord::npos) return Rational(0);
  return Rational::pow2_neg(static_cast<int>(n));
}

std::size_t OneSidedWordHash::operator()(const OneSidedWord& w) const noexcept {
  return hash_word(w.period(), hash_word(w.preperiod(), 17));
}

// ------------------------------------------------------------ TwoSidedWord

TwoSidedWord::TwoSidedWord(Word left, Word core, Word right, std::int64_t start)
    : left_(std::move(left)), core_(std::move(core)), right_(std::move(right)), start_(start) {
  if (left_.empty() || right_.empty()) throw std::invalid_argument("TwoSidedWord: empty tail period");
  canonicalize();
}

void TwoSidedWord::canonicalize() {
  left_ = primitive_root(left_);
  right_ = primitive_root(right_);
  while (!core_.empty() && core_.front() == left_.front()) {
    rotate_left(left_);
    core_.erase(core_.begin());
    ++start_;
  }
  while (!core_.empty() && core_.back() == right_.back()) {
    rotate_right(right_);
    core_.pop_back();
  }
  if (core_.empty()) {
    // The left tail may still run into the right one; push the boundary as
    // far right as the left period continues.
    const std::size_t cap = left_.size() * right_.size() + 1;
    for (std::size_t i = 0; i < cap && left_ != right_ && right_.front() == left_.front(); ++i) {
      rotate_left(left_);
      rotate_left(right_);
      ++start_;
    }
    if (left_ == right_) {
      // Periodic word: move the boundary to index 0.
      const auto k = floor_mod(start_, static_cast<std::int64_t>(left_.size()));
      std::rotate(left_.rbegin(), left_.rbegin() + k, left_.rend());
      right_ = left_;
      start_ = 0;
    }
  }
}

TwoSidedWord TwoSidedWord::parse(std::string_view text, const Alphabet& alphabet) {
  auto bad = [&] { return std::invalid_argument("two-sided word: expected '(left)core.core(right)', got '" + std::string(text) + "'"); };
  if (text.empty() || text.front() != '(') throw bad();
  auto lclose = text.find(')');
  auto ropen = text.rfind('(');
  if (lclose == std::string_view::npos || ropen == 0 || ropen < lclose || text.back() != ')') throw bad();
  Word left, core, right;
  for (char c : text.substr(1, lclose - 1)) left.push_back(alphabet.symbol(c));
  for (char c : text.substr(ropen + 1, text.size() - ropen - 2)) right.push_back(alphabet.symbol(c));
  std::string_view mid = text.substr(lclose + 1, ropen - lclose - 1);
  std::int64_t dot = -1;
  for (char c : mid) {
    if (c == '.') {
      if (dot >= 0) throw bad();
      dot = static_cast<std::int64_t>(core.size());
    } else {
      core.push_back(alphabet.symbol(c));
    }
  }
  if (dot < 0 || left.empty() || right.empty()) throw bad();
  return TwoSidedWord(std::move(left), std::move(core), std::move(right), -dot);
}

Symbol TwoSidedWord::at(std::int64_t n) const {
  if (n < start_) {
    const auto p = static_cast<std::int64_t>(left_.size());
    return left_[static_cast<std::size_t>(floor_mod(n - start_, p))];
  }
  if (n < core_end()) return core_[static_cast<std::size_t>(n - start_)];
  return right_[static_cast<std::size_t>((n - core_end()) % static_cast<std::int64_t>(right_.size()))];
}

OneSidedWord TwoSidedWord::ray(std::int64_t from) const {
  const std::int64_t end = core_end();
  if (from >= end) {
    Word per = right_;
    auto k = static_cast<std::ptrdiff_t>((from - end) % static_cast<std::int64_t>(per.size()));
    std::rotate(per.begin(), per.begin() + k, per.end());
    return OneSidedWord({}, std::move(per));
  }
  Word pre;
  pre.reserve(static_cast<std::size_t>(end - from));
  for (std::int64_t n = from; n < end; ++n) pre.push_back(at(n));
  return OneSidedWord(std::move(pre), right_);
}

std::string TwoSidedWord::str(const Alphabet& alphabet) const {
  // Write the explicit window [min(start,0), max(core_end,0)) so the dot fits.
  const std::int64_t lo = std::min<std::int64_t>(start_, 0);
  const std::int64_t hi = std::max<std::int64_t>(core_end(), 0);
  std::string s = "(";
  // Rotate the left period so that it ends right before `lo`.
  for (std::int64_t n = lo - static_cast<std::int64_t>(left_.size()); n < lo; ++n) s.push_back(alphabet.token(at(n)));
  s.push_back(')');
  for (std::int64_t n = lo; n < hi; ++n) {
    if (n == 0) s.push_back('.');
    s.push_back(alphabet.token(at(n)));
  }
  if (hi == 0) s.push_back('.');
  s.push_back('(');
  for (std::int64_t n = hi; n < hi + static_cast<std::int64_t>(right_.size()); ++n) s.push_back(alphabet.token(at(n)));
  s.push_back(')');
  return s;
}

std::strong_ordering operator<=>(const TwoSidedWord& a, const TwoSidedWord& b) {
  if (auto c = a.left_ <=> b.left_; c != 0) return c;
  if (auto c = a.core_ <=> b.core_; c != 0) return c;
  if (auto c = a.right_ <=> b.right_; c != 0) return c;
  return a.start_ <=> b.start_;
}

TwoSidedWord shift_two_sided(const TwoSidedWord& s, std::int64_t n) {
  return TwoSidedWord(s.left(), s.core(), s.right(), s.start() - n);
}

Rational metric_two_sided(const TwoSidedWord& s, const TwoSidedWord& t) {
  // Split Z into a left tail (n <= m), an explicit middle and a right tail
  // (n >= M). On each tail the disagreement pattern is periodic.
  const std::int64_t M = std::max<std::int64_t>({1, s.core_end(), t.core_end()});
  const std::int64_t m = std::min<std::int64_t>({-1, s.core_begin() - 1, t.core_begin() - 1});
  auto weight = [](std::int64_t n) { return Rational::pow2_neg(static_cast<int>(n < 0 ? -n : n)); };

  Rational total(0);
  for (std::int64_t n = m + 1; n < M; ++n)
    if (s.at(n) != t.at(n)) total += weight(n);

  const auto p = static_cast<std::int64_t>(std::lcm(s.right().size(), t.right().size()));
  Rational right(0);
  for (std::int64_t j = 0; j < p; ++j)
    if (s.at(M + j) != t.at(M + j)) right += weight(M + j);
  total += right / (Rational(1) - Rational::pow2_neg(static_cast<int>(p)));

  const auto q = static_cast<std::int64_t>(std::lcm(s.left().size(), t.left().size()));
  Rational left(0);
  for (std::int64_t j = 0; j < q; ++j)
    if (s.at(m - j) != t.at(m - j)) left += weight(m - j);
  total += left / (Rational(1) - Rational::pow2_neg(static_cast<int>(q)));
  return total;
}

std::size_t TwoSidedWordHash::operator()(const TwoSidedWord& w) const noexcept {
  std::size_t h = hash_word(w.right(), hash_word(w.core(), hash_word(w.left(), 29)));
  return h ^ std::hash<std::int64_t>{}(w.start());
}

}  // namespace invlim
