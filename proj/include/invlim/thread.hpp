#pragma once

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invlim/rational.hpp"
#include "invlim/system.hpp"

namespace invlim {

/// Finite prefix (y_0, ..., y_N) of a point of the inverse limit, with
/// y_n = g(y_{n+1}).
template <DynamicalSystem S>
class Thread {
 public:
  using Point = PointOf<S>;

  Thread(const S& sys, std::vector<Point> entries) : sys_(&sys), entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("thread: no entries");
    for (std::size_t n = 0; n + 1 < entries_.size(); ++n)
      if (sys.map(entries_[n + 1]) != entries_[n])
        throw std::invalid_argument("thread: entry " + std::to_string(n + 1) + " does not map to entry " +
                                    std::to_string(n));
  }

  const S& system() const { return *sys_; }
  int depth() const { return static_cast<int>(entries_.size()) - 1; }
  const Point& operator[](std::size_t n) const { return entries_.at(n); }
  const std::vector<Point>& entries() const { return entries_; }

  friend bool operator==(const Thread& a, const Thread& b) { return a.entries_ == b.entries_; }

 private:
  const S* sys_;
  std::vector<Point> entries_;
};

/// A metric value known up to truncation: lo <= true value <= hi.
struct HatMetricValue {
  RationalInterval value;
  int depth = 0;
};

/// Preimage selection for extend_thread: picks one of the (sorted, nonempty)
/// preimages of the current last entry; `index` is the new entry's index.
template <class P>
using Chooser = std::function<P(const std::vector<P>& preimages, int index)>;

/// The least preimage in the point order.
template <class P>
Chooser<P> canonical_chooser() {
  return [](const std::vector<P>& pre, int) { return pre.front(); };
}

/// The greatest preimage; used to probe choice independence.
template <class P>
Chooser<P> greatest_chooser() {
  return [](const std::vector<P>& pre, int) { return pre.back(); };
}

/// The preimage closest to guide[index] (ties: least), canonical past the
/// guide's depth.
template <DynamicalSystem S>
Chooser<PointOf<S>> nearest_chooser(const Thread<S>& guide) {
  return [guide](const std::vector<PointOf<S>>& pre, int index) {
    if (index > guide.depth()) return pre.front();
    const auto& target = guide[static_cast<std::size_t>(index)];
    const auto& sys = guide.system();
    auto best = pre.front();
    Rational bd = sys.distance(best, target);
    for (const auto& u : pre) {
      Rational d = sys.distance(u, target);
      if (d < bd) {
        bd = d;
        best = u;
      }
    }
    return best;
  };
}

template <DynamicalSystem S>
Thread<S> constant_thread(const S& sys, const PointOf<S>& fixed, int depth) {
  if (sys.map(fixed) != fixed) throw std::invalid_argument("constant_thread: point is not fixed");
  return Thread<S>(sys, std::vector<PointOf<S>>(static_cast<std::size_t>(depth) + 1, fixed));
}

template <DynamicalSystem S>
Thread<S> extend_thread(const Thread<S>& x, int target, const Chooser<PointOf<S>>& choose) {
  if (target < x.depth()) throw std::invalid_argument("extend_thread: target below current depth");
  const S& sys = x.system();
  auto e = x.entries();
  while (static_cast<int>(e.size()) <= target) {
    auto pre = sys.preimages(e.back());
    if (pre.empty()) throw std::runtime_error("extend_thread: " + sys.format(e.back()) + " has no preimage");
    auto u = choose(pre, static_cast<int>(e.size()));
    if (!std::binary_search(pre.begin(), pre.end(), u)) throw std::logic_error("extend_thread: chooser returned a non-preimage");
    e.push_back(std::move(u));
  }
  return Thread<S>(sys, std::move(e));
}

template <DynamicalSystem S>
Thread<S> extend_thread(const Thread<S>& x, int target) {
  return extend_thread(x, target, canonical_chooser<PointOf<S>>());
}

/// The canonical thread through y: (y, least preimage, ...).
template <DynamicalSystem S>
Thread<S> canonical_thread(const S& sys, const PointOf<S>& y, int depth) {
  return extend_thread(Thread<S>(sys, {y}), depth);
}

/// (g(y_0), y_0, ..., y_N)
template <DynamicalSystem S>
Thread<S> apply_hat_g(const Thread<S>& x) {
  std::vector<PointOf<S>> e;
  e.reserve(x.entries().size() + 1);
  e.push_back(x.system().map(x[0]));
  e.insert(e.end(), x.entries().begin(), x.entries().end());
  return Thread<S>(x.system(), std::move(e));
}

/// (y_1, ..., y_N)
template <DynamicalSystem S>
Thread<S> apply_hat_g_inverse(const Thread<S>& x) {
  if (x.depth() < 1) throw std::invalid_argument("apply_hat_g_inverse: depth-0 thread");
  return Thread<S>(x.system(), std::vector<PointOf<S>>(x.entries().begin() + 1, x.entries().end()));
}

/// d'(x, y) = sup_n gamma^n d(x_n, y_n), bracketed using the realized terms
/// and the tail bound gamma^(N+1) * diameter.
template <DynamicalSystem S>
HatMetricValue metric_dprime(const Thread<S>& x, const Thread<S>& y, const Rational& gamma) {
  const S& sys = x.system();
  const int N = std::min(x.depth(), y.depth());
  Rational lo(0), weight(1);
  for (int n = 0; n <= N; ++n) {
    lo = max(lo, weight * sys.distance(x[static_cast<std::size_t>(n)], y[static_cast<std::size_t>(n)]));
    weight *= gamma;
  }
  Rational hi = max(lo, weight * sys.diameter());
  return {RationalInterval(lo, hi), N};
}

/// d^(x, y) = sum_{k<K} gamma^-k d'(g^-k x, g^-k y).
template <DynamicalSystem S>
HatMetricValue metric_dhat(const Thread<S>& x, const Thread<S>& y, const AxiomConstants& c) {
  if (x.depth() < c.K - 1 || y.depth() < c.K - 1) throw std::invalid_argument("metric_dhat: depth below K-1");
  const S& sys = x.system();
  const int N = std::min(x.depth(), y.depth());
  RationalInterval total(Rational(0), Rational(0));
  Rational scale(1);
  const Rational inv = c.gamma.reciprocal();
  for (int k = 0; k < c.K; ++k) {
    // d' of the k-fold inverse images: entries shifted by k.
    Rational lo(0), weight(1);
    for (int n = 0; n + k <= N; ++n) {
      auto i = static_cast<std::size_t>(n + k);
      lo = max(lo, weight * sys.distance(x[i], y[i]));
      weight *= c.gamma;
    }
    Rational hi = max(lo, weight * sys.diameter());
    total = total + scale * RationalInterval(lo, hi);
    scale *= inv;
  }
  return {total, N};
}

/// Sound bound on the width of metric_dhat at depth N:
/// sum_{k<K} gamma^(N+1-2k) * diameter.
inline Rational dhat_width_bound(int N, const AxiomConstants& c, const Rational& diameter) {
  Rational total(0);
  for (int k = 0; k < c.K; ++k) total += pow(c.gamma, N + 1 - 2 * k) * diameter;
  return total;
}

template <DynamicalSystem S>
std::string format_thread(const Thread<S>& x) {
  std::string out;
  for (std::size_t n = 0; n < x.entries().size(); ++n) {
    if (n) out += ' ';
    out += x.system().format(x[n]);
  }
  return out;
}

/// Whitespace-separated entries y_0 y_1 ... y_N.
template <DynamicalSystem S>
Thread<S> parse_thread(const S& sys, std::string_view text) {
  std::vector<PointOf<S>> e;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    if (end > pos) e.push_back(sys.parse(text.substr(pos, end - pos)));
    pos = end;
  }
  return Thread<S>(sys, std::move(e));
}

}  // namespace invlim
