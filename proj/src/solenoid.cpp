#include "invlim/solenoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace invlim {

namespace {

Rational circle_gap(const Rational& s, const Rational& t) {
  Rational c = abs(s - t);
  return min(c, Rational(1) - c);
}

Rational to_wedge(const Rational& s) { return min(s, Rational(1) - s); }

const Rational kThird(1, 3);
const Rational kTwoThirds(2, 3);
const Rational kHalf(1, 2);

}  // namespace

SolenoidPoint::SolenoidPoint(Edge edge, Rational position) : edge_(edge), pos_(std::move(position)) {
  if (pos_ < Rational(0) || pos_ >= Rational(1)) throw std::invalid_argument("solenoid: position must lie in [0,1)");
  if (pos_.is_zero()) edge_ = Edge::kA;
}

Rational SolenoidSystem::distance(const Point& x, const Point& y) const {
  if (x.edge() == y.edge()) return circle_gap(x.position(), y.position());
  return to_wedge(x.position()) + to_wedge(y.position());
}

SolenoidPoint SolenoidSystem::map(const Point& x) const {
  const Rational& t = x.position();
  if (x.edge() == Edge::kA) {
    if (t < kThird) return {Edge::kA, Rational(3) * t};
    if (t < kTwoThirds) return {Edge::kA, Rational(3) * t - Rational(1)};
    return {Edge::kB, Rational(3) * t - Rational(2)};
  }
  if (t < kHalf) return {Edge::kA, Rational(2) * t};
  return {Edge::kB, Rational(2) * t - Rational(1)};
}

std::vector<SolenoidPoint> SolenoidSystem::preimages(const Point& y) const {
  std::vector<Point> out;
  const Rational& s = y.position();
  if (y.is_wedge()) {
    // Every branch endpoint lands on v.
    out = {Point(), {Edge::kA, kThird}, {Edge::kA, kTwoThirds}, {Edge::kB, kHalf}};
  } else if (y.edge() == Edge::kA) {
    out = {{Edge::kA, s / Rational(3)}, {Edge::kA, (s + Rational(1)) / Rational(3)}, {Edge::kB, s / Rational(2)}};
  } else {
    out = {{Edge::kA, (s + Rational(2)) / Rational(3)}, {Edge::kB, (s + Rational(1)) / Rational(2)}};
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SolenoidPoint> SolenoidSystem::net(const Rational& resolution) const {
  if (resolution.sign() <= 0) throw std::invalid_argument("net: resolution must be positive");
  // m = ceil(1/h)
  mpq_class inv = resolution.reciprocal().to_mpq();
  mpz_class m = (inv.get_num() + inv.get_den() - 1) / inv.get_den();
  if (m > 1000000) throw std::invalid_argument("solenoid net: resolution too fine");
  const auto n = static_cast<std::int64_t>(m.get_si());
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(2 * n));
  for (std::int64_t j = 0; j < n; ++j) out.emplace_back(Edge::kA, Rational(j, n));
  for (std::int64_t j = 1; j < n; ++j) out.emplace_back(Edge::kB, Rational(j, n));
  return out;
}

std::vector<SolenoidPoint> SolenoidSystem::neighbours(const Point& p, const Rational& delta) const {
  if (delta.sign() <= 0) throw std::invalid_argument("neighbours: delta must be positive");
  mpq_class inv = delta.reciprocal().to_mpq();
  mpz_class m = (inv.get_num() + inv.get_den() - 1) / inv.get_den();
  const Rational step(Rational::parse("1/" + m.get_str()));
  std::vector<Point> out;
  auto wrap = [](Rational t) { return t >= Rational(1) ? t - Rational(1) : t.sign() < 0 ? t + Rational(1) : t; };
  for (Edge e : {Edge::kA, Edge::kB}) {
    if (!p.is_wedge() && e != p.edge()) continue;
    out.emplace_back(e, wrap(p.position() + step));
    out.emplace_back(e, wrap(p.position() - step));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::erase(out, p);
  return out;
}

std::string SolenoidSystem::format(const Point& p) const {
  if (p.is_wedge()) return "v";
  return std::string(p.edge() == Edge::kA ? "a:" : "b:") + p.position().str();
}

SolenoidPoint SolenoidSystem::parse(std::string_view text) const {
  if (text == "v") return Point();
  if (text.size() < 3 || text[1] != ':' || (text[0] != 'a' && text[0] != 'b'))
    throw std::invalid_argument("solenoid point: expected 'v', 'a:p/q' or 'b:p/q', got '" + std::string(text) + "'");
  return {text[0] == 'a' ? Edge::kA : Edge::kB, Rational::parse(text.substr(2))};
}

Rational SolenoidSystem::min_distance(const std::vector<Point>& sorted, const Point& x) const {
  if (sorted.empty()) throw std::invalid_argument("min_distance: empty set");
  // Candidates: neighbours on x's circle (with wrap-around) and the points of
  // each circle nearest to v.
  auto split = std::partition_point(sorted.begin(), sorted.end(), [](const Point& p) { return p.edge() == Edge::kA; });
  Rational best = distance(sorted.front(), x);
  auto consider = [&](auto it) { best = min(best, distance(*it, x)); };
  for (auto [lo, hi] : {std::pair{sorted.begin(), split}, std::pair{split, sorted.end()}}) {
    if (lo == hi) continue;
    consider(lo);
    consider(hi - 1);
    if (lo->edge() == x.edge()) {
      auto it = std::lower_bound(lo, hi, x);
      if (it != hi) consider(it);
      if (it != lo) consider(it - 1);
    }
  }
  return best;
}

}  // namespace invlim
