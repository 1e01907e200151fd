#include "invlim/example2.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace invlim {

namespace {

bool uses(const OneSidedWord& w, Symbol s) {
  return std::find(w.preperiod().begin(), w.preperiod().end(), s) != w.preperiod().end() ||
         std::find(w.period().begin(), w.period().end(), s) != w.period().end();
}

bool uses(const Word& w, Symbol s) { return std::find(w.begin(), w.end(), s) != w.end(); }

void check_parameters(int K, int N) {
  if (K < 1) throw std::invalid_argument("example2: K must be >= 1");
  if (N < 2 * K) throw std::invalid_argument("example2: N must be >= 2K");
  if (N > 60) throw std::invalid_argument("example2: N too large");
}

OneSidedWord single(std::size_t at, Symbol s) {
  Word pre(at + 1, 0);
  pre[at] = s;
  return OneSidedWord(std::move(pre), {0});
}

}  // namespace

Example2System::Example2System() : alphabet_(Alphabet::digits(3)) {}

bool Example2System::in_space(const OneSidedWord& w) { return !(uses(w, 1) && uses(w, 2)); }

std::vector<OneSidedWord> Example2System::preimages(const Point& y) const {
  std::vector<Point> out;
  for (Symbol s = 0; s < 3; ++s) {
    auto u = y.prepended(s);
    if (in_space(u)) out.push_back(std::move(u));
  }
  return out;
}

std::vector<OneSidedWord> Example2System::net(const Rational& resolution) const {
  const int level = dyadic_level(resolution);
  std::set<Point> pts;
  for (auto& w : eventually_periodic_words(EdgeShiftSpec::full_shift(3), static_cast<std::size_t>(level)))
    if (in_space(w)) pts.insert(std::move(w));
  Word w(static_cast<std::size_t>(level), 0);
  while (true) {
    if (!(uses(w, 1) && uses(w, 2))) pts.insert(OneSidedWord(w, {0}));
    std::size_t i = w.size();
    while (i > 0 && w[i - 1] == 2) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return {pts.begin(), pts.end()};
}

OneSidedWord Example2System::parse(std::string_view text) const {
  auto w = OneSidedWord::parse(text, alphabet_);
  if (!in_space(w)) throw std::invalid_argument("example2: word '" + std::string(text) + "' uses both 1 and 2");
  return w;
}

Rational Example2System::min_distance(const std::vector<Point>& sorted, const Point& x) const {
  return min_distance_lexicographic(sorted, x);
}

Example2Pair example2_stated_pair(int K, int N) {
  check_parameters(K, N);
  return {single(static_cast<std::size_t>(N + K), 1), single(static_cast<std::size_t>(N), 2)};
}

Example2Pair example2_corrected_pair(int K, int N) {
  check_parameters(K, N);
  return {OneSidedWord({1}, {0}), single(static_cast<std::size_t>(N), 2)};
}

Example2Certificate certify_example2(const Example2System& sys, int K, const Rational& gamma,
                                     const Example2Pair& pair) {
  if (gamma.sign() <= 0 || gamma >= Rational(1)) throw std::invalid_argument("example2: gamma must lie in (0,1)");
  Example2Certificate c;
  c.K = K;
  c.gamma = gamma;
  c.x = pair.x;
  c.y = pair.y;
  c.distance_gKx_y = sys.distance(iterate(sys, pair.x, K), pair.y);
  c.radius = gamma * c.distance_gKx_y;
  c.target = iterate(sys, pair.y, K);
  c.preimages = preimages_k(sys, c.target, 2 * K);
  for (const auto& u : c.preimages) {
    Rational d = sys.distance(u, pair.x);
    if (d <= c.radius) c.ball_members.push_back(u);
    c.preimage_distances.push_back(std::move(d));
  }
  c.falsified = c.ball_members.empty();
  return c;
}

}  // namespace invlim
