#include "invlim/shift.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

namespace invlim {

namespace {

bool reaches_all(const AdjacencyMatrix& a, bool transpose) {
  const std::size_t n = a.size();
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  while (!frontier.empty()) {
    std::size_t v = frontier.front();
    frontier.pop();
    for (std::size_t w = 0; w < n; ++w) {
      bool edge = transpose ? a[w][v] != 0 : a[v][w] != 0;
      if (edge && !seen[w]) {
        seen[w] = true;
        frontier.push(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Calls f on every word of length n over k symbols.
template <class F>
void for_each_word(std::size_t n, std::size_t k, F&& f) {
  Word w(n, 0);
  while (true) {
    f(w);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++w[i] < k) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace

bool is_irreducible(const AdjacencyMatrix& adjacency) {
  if (adjacency.empty()) return false;
  return reaches_all(adjacency, false) && reaches_all(adjacency, true);
}

EdgeShiftSpec::EdgeShiftSpec(Alphabet alphabet, AdjacencyMatrix adjacency)
    : alphabet_(std::move(alphabet)), adjacency_(std::move(adjacency)) {
  const std::size_t n = adjacency_.size();
  if (n == 0) throw std::invalid_argument("shift spec: empty adjacency matrix");
  if (alphabet_.size() != n) throw std::invalid_argument("shift spec: alphabet size does not match the adjacency matrix");
  for (const auto& row : adjacency_) {
    if (row.size() != n) throw std::invalid_argument("shift spec: adjacency matrix is not square");
    for (auto v : row)
      if (v > 1) throw std::invalid_argument("shift spec: adjacency entries must be 0 or 1");
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool out = false, in = false;
    for (std::size_t j = 0; j < n; ++j) {
      out = out || adjacency_[i][j];
      in = in || adjacency_[j][i];
    }
    if (!out || !in)
      throw std::invalid_argument(std::string("shift spec: symbol '") + alphabet_.token(static_cast<Symbol>(i)) +
                                  "' is stranded (needs an incoming and an outgoing edge)");
  }
}

EdgeShiftSpec EdgeShiftSpec::full_shift(std::size_t symbols) {
  return EdgeShiftSpec(Alphabet::digits(symbols), AdjacencyMatrix(symbols, std::vector<std::uint8_t>(symbols, 1)));
}

EdgeShiftSpec EdgeShiftSpec::golden_mean() { return EdgeShiftSpec(Alphabet::digits(2), {{1, 1}, {1, 0}}); }

bool EdgeShiftSpec::is_full() const {
  for (const auto& row : adjacency_)
    for (auto v : row)
      if (!v) return false;
  return true;
}

bool EdgeShiftSpec::admissible(const Word& w) const {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] >= size() || !allowed(w[i], w[i + 1])) return false;
  return w.empty() || w.back() < size();
}

bool EdgeShiftSpec::admissible(const OneSidedWord& x) const {
  Word w = x.preperiod();
  w.insert(w.end(), x.period().begin(), x.period().end());
  w.push_back(x.period().front());
  return admissible(w);
}

bool EdgeShiftSpec::admissible(const TwoSidedWord& s) const {
  Word w = s.left();
  w.insert(w.end(), s.left().begin(), s.left().end());
  w.insert(w.end(), s.core().begin(), s.core().end());
  w.insert(w.end(), s.right().begin(), s.right().end());
  w.insert(w.end(), s.right().begin(), s.right().end());
  return admissible(w);
}

std::vector<OneSidedWord> eventually_periodic_words(const EdgeShiftSpec& spec, std::size_t max_length) {
  std::set<OneSidedWord> out;
  const std::size_t k = spec.size();
  for (std::size_t total = 1; total <= max_length; ++total) {
    for (std::size_t p = 1; p <= total; ++p) {
      for_each_word(total, k, [&](const Word& w) {
        Word pre(w.begin(), w.end() - static_cast<std::ptrdiff_t>(p));
        Word per(w.end() - static_cast<std::ptrdiff_t>(p), w.end());
        if (primitive_root(per).size() != p) return;
        if (!pre.empty() && pre.back() == per.back()) return;  // not canonical
        OneSidedWord x(std::move(pre), std::move(per));
        if (spec.admissible(x)) out.insert(std::move(x));
      });
    }
  }
  return {out.begin(), out.end()};
}

std::vector<TwoSidedWord> eventually_periodic_two_sided(const EdgeShiftSpec& spec, std::size_t max_length,
                                                        std::int64_t min_start, std::int64_t max_start) {
  std::set<TwoSidedWord> out;
  const std::size_t k = spec.size();
  for (std::size_t total = 2; total <= max_length; ++total) {
    for (std::size_t l = 1; l < total; ++l) {
      for (std::size_t r = 1; l + r <= total; ++r) {
        const std::size_t c = total - l - r;
        for_each_word(total, k, [&](const Word& w) {
          Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(l));
          Word core(w.begin() + static_cast<std::ptrdiff_t>(l), w.begin() + static_cast<std::ptrdiff_t>(l + c));
          Word right(w.begin() + static_cast<std::ptrdiff_t>(l + c), w.end());
          for (std::int64_t st = min_start; st <= max_start; ++st) {
            TwoSidedWord s(left, core, right, st);
            if (s.core_begin() < min_start || s.core_begin() > max_start) continue;
            if (spec.admissible(s)) out.insert(std::move(s));
          }
        });
      }
    }
  }
  return {out.begin(), out.end()};
}

OneSidedWord greedy_extension(const EdgeShiftSpec& spec, const Word& w) {
  if (w.empty()) throw std::invalid_argument("greedy_extension: empty word");
  Word path = w;
  std::vector<std::ptrdiff_t> first_seen(spec.size(), -1);
  // Follow smallest successors from the last symbol until a symbol repeats.
  Symbol cur = w.back();
  std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(path.size()) - 1;
  while (first_seen[cur] < 0) {
    first_seen[cur] = pos;
    Symbol next = 0;
    while (!spec.allowed(cur, next)) ++next;
    path.push_back(next);
    cur = next;
    ++pos;
  }
  // path[first_seen[cur] .. pos) is the cycle.
  Word pre(path.begin(), path.begin() + first_seen[cur]);
  Word per(path.begin() + first_seen[cur], path.begin() + pos);
  return OneSidedWord(std::move(pre), std::move(per));
}

Rational min_distance_lexicographic(const std::vector<OneSidedWord>& sorted, const OneSidedWord& x) {
  if (sorted.empty()) throw std::invalid_argument("min_distance: empty set");
  auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
  Rational best(1);
  if (it != sorted.end()) best = min(best, metric_one_sided(*it, x));
  if (it != sorted.begin()) best = min(best, metric_one_sided(*(it - 1), x));
  return best;
}

int dyadic_level(const Rational& h) {
  if (h.sign() <= 0) throw std::invalid_argument("resolution must be positive");
  int level = 1;
  while (Rational::pow2_neg(level) > h) ++level;
  return level;
}

ShiftSystem::ShiftSystem(EdgeShiftSpec spec, std::string name) : spec_(std::move(spec)), name_(std::move(name)) {}

std::vector<OneSidedWord> ShiftSystem::preimages(const OneSidedWord& y) const {
  std::vector<OneSidedWord> out;
  const Symbol head = y.at(0);
  for (std::size_t s = 0; s < spec_.size(); ++s)
    if (spec_.allowed(static_cast<Symbol>(s), head)) out.push_back(y.prepended(static_cast<Symbol>(s)));
  return out;  // prepending in symbol order keeps the word order
}

std::vector<OneSidedWord> ShiftSystem::net(const Rational& resolution) const {
  const int level = dyadic_level(resolution);
  std::set<OneSidedWord> pts;
  for (auto& w : eventually_periodic_words(spec_, static_cast<std::size_t>(level))) pts.insert(std::move(w));
  for_each_word(static_cast<std::size_t>(level), spec_.size(), [&](const Word& w) {
    if (spec_.admissible(w)) pts.insert(greedy_extension(spec_, w));
  });
  return {pts.begin(), pts.end()};
}

std::vector<OneSidedWord> ShiftSystem::neighbours(const OneSidedWord& p, const Rational& delta) const {
  const auto level = static_cast<std::size_t>(dyadic_level(delta));
  Word w = p.prefix(level);
  std::vector<OneSidedWord> out;
  for (std::size_t s = 0; s < spec_.size(); ++s) {
    const auto sym = static_cast<Symbol>(s);
    if (sym == p.at(level) || !spec_.allowed(w.back(), sym)) continue;
    Word v = w;
    v.push_back(sym);
    out.push_back(greedy_extension(spec_, v));
  }
  return out;
}

OneSidedWord ShiftSystem::parse(std::string_view text) const {
  OneSidedWord w = OneSidedWord::parse(text, spec_.alphabet());
  if (!spec_.admissible(w)) throw std::invalid_argument("word '" + std::string(text) + "' is not admissible");
  return w;
}

}  // namespace invlim
