#include "invlim/gasket.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace invlim {

namespace {

using Weights = GasketPoint::Weights;

// Special points of a triangle: corners T, L, R and edge midpoints ML (top-left
// edge), MB (bottom), MR (top-right).
enum Special { kT = 0, kL = 1, kR = 2, kML = 3, kMB = 4, kMR = 5 };

// Corners of each sub-gasket as special points of the parent, in
// (top, left, right) order.
constexpr int kSubCorners[3][3] = {{kT, kML, kMR}, {kML, kL, kMB}, {kMR, kMB, kR}};

// Intrinsic distances between special points, in half sides.
constexpr std::int64_t kSpecialDist[6][6] = {
    {0, 2, 2, 1, 2, 1}, {2, 0, 2, 1, 1, 2}, {2, 2, 0, 2, 1, 1},
    {1, 1, 2, 0, 1, 1}, {2, 1, 1, 1, 0, 1}, {1, 2, 1, 1, 1, 0},
};

constexpr char kMidpointLabel[3] = {'A', 'B', 'C'};  // ML, MB, MR

constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;

std::int64_t pow2(int n) { return std::int64_t{1} << n; }

int label_index(char c) {
  if (c < 'A' || c > 'C') throw std::invalid_argument(std::string("gasket: corner label must be A, B or C, got '") + c + "'");
  return c - 'A';
}

int first_sub(const Weights& w, int level) {
  const std::int64_t h = pow2(level - 1);
  for (int s = 0; s < 3; ++s)
    if (w[s] >= h) return s;
  return -1;
}

Weights lift(Weights w, int from, int to) {
  for (auto& x : w) x <<= (to - from);
  return w;
}

// Distances from the vertex w of a level-n triangle to its corners, in units
// of 2^-n triangle sides.
std::array<std::int64_t, 3> corner_distances(Weights w, int n) {
  if (n == 0) {
    std::array<std::int64_t, 3> d{};
    for (int i = 0; i < 3; ++i) d[i] = w[i] == 1 ? 0 : 1;
    return d;
  }
  const std::int64_t h = pow2(n - 1);
  const int s = first_sub(w, n);
  w[s] -= h;
  auto sub = corner_distances(w, n - 1);
  std::array<std::int64_t, 3> d{kFar, kFar, kFar};
  for (int x = 0; x < 3; ++x)
    for (int k = 0; k < 3; ++k) d[x] = std::min(d[x], sub[k] + h * kSpecialDist[kSubCorners[s][k]][x]);
  return d;
}

// Intrinsic distance inside one gasket between two level-n vertices.
std::int64_t intra_distance(Weights p, Weights q, int n) {
  std::int64_t offset = 0;
  while (true) {
    if (p == q) return offset;
    if (n == 0) return offset + 1;
    const std::int64_t h = pow2(n - 1);
    int common = -1;
    for (int s = 0; s < 3 && common < 0; ++s)
      if (p[s] >= h && q[s] >= h) common = s;
    if (common >= 0) {
      p[common] -= h;
      q[common] -= h;
      --n;
      continue;
    }
    const int sp = first_sub(p, n), sq = first_sub(q, n);
    p[sp] -= h;
    q[sq] -= h;
    auto dp = corner_distances(p, n - 1), dq = corner_distances(q, n - 1);
    std::int64_t best = kFar;
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        best = std::min(best, dp[k] + h * kSpecialDist[kSubCorners[sp][k]][kSubCorners[sq][l]] + dq[l]);
    return offset + best;
  }
}

// The level-n vertices are the level-(n-1) vertices placed in each of the
// three sub-gaskets.
std::vector<Weights> all_vertices(int n) {
  if (n == 0) return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  std::set<Weights> out;
  for (const auto& w : all_vertices(n - 1)) {
    for (int s = 0; s < 3; ++s) {
      Weights v = w;
      v[static_cast<std::size_t>(s)] += pow2(n - 1);
      out.insert(v);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace

// --------------------------------------------------------------- table

std::array<char, 3> GasketLabelTable::image_labels(int c, Corner sub) const {
  const auto& l = labels.at(static_cast<std::size_t>(c));
  switch (sub) {
    case Corner::kTop:
      return {l[0], kMidpointLabel[0], kMidpointLabel[2]};
    case Corner::kLeft:
      return {kMidpointLabel[0], l[1], kMidpointLabel[1]};
    case Corner::kRight:
      return {kMidpointLabel[2], kMidpointLabel[1], l[2]};
  }
  throw std::logic_error("gasket: bad sub-gasket");
}

GasketLabelTable GasketLabelTable::from_labels(const std::array<std::array<char, 3>, kGasketComponents>& labels) {
  GasketLabelTable t;
  t.labels = labels;
  for (const auto& l : labels)
    for (char c : l) label_index(c);
  for (int c = 0; c < kGasketComponents; ++c) {
    for (int s = 0; s < 3; ++s) {
      auto want = t.image_labels(c, static_cast<Corner>(s));
      int found = -1;
      for (int j = 0; j < kGasketComponents; ++j) {
        if (labels[static_cast<std::size_t>(j)] != want) continue;
        if (found >= 0)
          throw std::invalid_argument("gasket: sub-gasket " + std::to_string(s) + " of Y" + std::to_string(c + 1) +
                                      " has more than one candidate target");
        found = j;
      }
      if (found < 0)
        throw std::invalid_argument("gasket: no component has corner labels " + std::string(want.begin(), want.end()) +
                                    " needed by sub-gasket " + std::to_string(s) + " of Y" + std::to_string(c + 1));
      t.targets[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] = found;
    }
  }
  return t;
}

GasketLabelTable GasketLabelTable::standard() {
  return from_labels({{
      {'A', 'A', 'B'},
      {'A', 'A', 'C'},
      {'A', 'B', 'B'},
      {'C', 'B', 'B'},
      {'C', 'A', 'C'},
      {'C', 'B', 'C'},
  }});
}

void GasketLabelTable::validate() const {
  static const char* kSubName[3] = {"top", "left", "right"};
  for (const auto& l : labels)
    for (char c : l) label_index(c);
  for (int c = 0; c < kGasketComponents; ++c) {
    for (int s = 0; s < 3; ++s) {
      int t = targets[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)];
      std::string where = "sub." + std::to_string(c + 1) + "." + kSubName[s];
      if (t < 0 || t >= kGasketComponents) throw std::invalid_argument("gasket: " + where + ": target out of range");
      auto want = image_labels(c, static_cast<Corner>(s));
      if (labels[static_cast<std::size_t>(t)] != want)
        throw std::invalid_argument("gasket: " + where + ": target Y" + std::to_string(t + 1) + " has corner labels " +
                                    std::string(labels[static_cast<std::size_t>(t)].begin(),
                                                labels[static_cast<std::size_t>(t)].end()) +
                                    " but the sub-gasket's corners map to " + std::string(want.begin(), want.end()));
    }
  }
}

// --------------------------------------------------------------- points

bool gasket_vertex_valid(const Weights& w, int level) {
  if (level < 0 || level > kGasketMaxLevel) return false;
  if (w[0] < 0 || w[1] < 0 || w[2] < 0 || w[0] + w[1] + w[2] != pow2(level)) return false;
  Weights v = w;
  for (int n = level; n > 0; --n) {
    int s = first_sub(v, n);
    if (s < 0) return false;
    v[s] -= pow2(n - 1);
  }
  return true;
}

GasketPoint GasketPoint::glued(char label) {
  GasketPoint p;
  p.label_ = static_cast<std::uint8_t>(label_index(label));
  return p;
}

GasketPoint GasketPoint::vertex(const GasketLabelTable& table, int component, Weights w, int level) {
  if (component < 1 || component > kGasketComponents) throw std::invalid_argument("gasket: component must be 1..6");
  if (!gasket_vertex_valid(w, level)) throw std::invalid_argument("gasket: not a vertex of the gasket skeleton");
  while (level > 0 && w[0] % 2 == 0 && w[1] % 2 == 0 && w[2] % 2 == 0) {
    for (auto& x : w) x /= 2;
    --level;
  }
  if (level == 0) {
    int corner = w[0] == 1 ? 0 : w[1] == 1 ? 1 : 2;
    return glued(table.labels[static_cast<std::size_t>(component - 1)][static_cast<std::size_t>(corner)]);
  }
  GasketPoint p;
  p.component_ = static_cast<std::uint8_t>(component);
  p.level_ = level;
  p.w_ = w;
  return p;
}

// --------------------------------------------------------------- system

GasketSystem::GasketSystem(GasketLabelTable table) : table_(std::move(table)) {
  table_.validate();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) glued_dist_[a][b] = a == b ? 0 : kFar;
  std::array<bool, 3> used{};
  for (const auto& l : table_.labels) {
    for (int i = 0; i < 3; ++i) {
      used[label_index(l[i])] = true;
      for (int j = 0; j < 3; ++j)
        if (l[i] != l[j]) glued_dist_[label_index(l[i])][label_index(l[j])] = 1;
    }
  }
  for (int k = 0; k < 3; ++k)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) glued_dist_[a][b] = std::min(glued_dist_[a][b], glued_dist_[a][k] + glued_dist_[k][b]);
  for (int a = 0; a < 3; ++a) {
    if (!used[a]) throw std::invalid_argument(std::string("gasket: label ") + char('A' + a) + " is never used");
    for (int b = 0; b < 3; ++b)
      if (glued_dist_[a][b] >= kFar) throw std::invalid_argument("gasket: glued vertices are not connected");
  }
}

Rational GasketSystem::distance(const Point& x, const Point& y) const {
  if (x == y) return Rational(0);
  const int n = std::max(x.level(), y.level());
  const std::int64_t side = pow2(n);
  // Distances from a point to the glued vertices A, B, C, in units of 2^-n.
  auto to_glued = [&](const Point& p) {
    std::array<std::int64_t, 3> d{kFar, kFar, kFar};
    if (p.is_glued()) {
      for (int b = 0; b < 3; ++b) d[b] = glued_distance(p.label() - 'A', b) * side;
      return d;
    }
    auto dc = corner_distances(lift(p.weights(), p.level(), n), n);
    const auto& labels = table_.labels[static_cast<std::size_t>(p.component() - 1)];
    for (int i = 0; i < 3; ++i)
      for (int b = 0; b < 3; ++b) d[b] = std::min(d[b], dc[i] + glued_distance(label_index(labels[i]), b) * side);
    return d;
  };
  auto dx = to_glued(x), dy = to_glued(y);
  std::int64_t best = kFar;
  for (int b = 0; b < 3; ++b) best = std::min(best, dx[b] + dy[b]);
  if (!x.is_glued() && x.component() == y.component())
    best = std::min(best, intra_distance(lift(x.weights(), x.level(), n), lift(y.weights(), y.level(), n), n));
  return Rational(best, side);
}

std::vector<Corner> GasketSystem::containing_subs(const Point& x) const {
  if (x.is_glued()) throw std::invalid_argument("gasket: glued vertices lie in several components");
  std::vector<Corner> out;
  const std::int64_t h = pow2(x.level() - 1);
  for (int s = 0; s < 3; ++s)
    if (x.weights()[static_cast<std::size_t>(s)] >= h) out.push_back(static_cast<Corner>(s));
  return out;
}

GasketPoint GasketSystem::map_in_sub(const Point& x, Corner sub) const {
  const auto s = static_cast<std::size_t>(sub);
  Weights w = x.weights();
  const std::int64_t h = pow2(x.level() - 1);
  if (w[s] < h) throw std::invalid_argument("gasket: point is not in that sub-gasket");
  w[s] -= h;
  int target = table_.targets[static_cast<std::size_t>(x.component() - 1)][s];
  return Point::vertex(table_, target + 1, w, x.level() - 1);
}

GasketPoint GasketSystem::map(const Point& x) const {
  if (x.is_glued()) return x;
  return map_in_sub(x, containing_subs(x).front());
}

std::vector<GasketPoint> GasketSystem::preimages(const Point& y) const {
  std::vector<Point> out;
  if (y.is_glued()) {
    out.push_back(y);
    // The edge midpoint carrying y's label in every component.
    static constexpr Weights kMid[3] = {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    for (int c = 1; c <= kGasketComponents; ++c) out.push_back(Point::vertex(table_, c, kMid[y.label() - 'A'], 1));
  } else {
    for (int c = 0; c < kGasketComponents; ++c) {
      for (int s = 0; s < 3; ++s) {
        if (table_.targets[static_cast<std::size_t>(c)][static_cast<std::size_t>(s)] != y.component() - 1) continue;
        Weights w = y.weights();
        w[static_cast<std::size_t>(s)] += pow2(y.level());
        out.push_back(Point::vertex(table_, c + 1, w, y.level() + 1));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GasketPoint> GasketSystem::net(const Rational& resolution) const {
  if (resolution.sign() <= 0) throw std::invalid_argument("net: resolution must be positive");
  int level = 0;
  while (Rational::pow2_neg(level) > resolution) ++level;
  if (level > 10) throw std::invalid_argument("gasket net: resolution too fine");
  std::set<Point> pts;
  auto verts = all_vertices(level);
  for (int c = 1; c <= kGasketComponents; ++c)
    for (const auto& w : verts) pts.insert(Point::vertex(table_, c, w, level));
  return {pts.begin(), pts.end()};
}

std::vector<GasketPoint> GasketSystem::neighbours(const Point& p, const Rational& delta) const {
  int level = 1;
  while (Rational::pow2_neg(level) > delta) ++level;
  level = std::max(level, p.level());
  if (level > kGasketMaxLevel) throw std::invalid_argument("gasket: neighbours below the finest level");
  // (component, weights) representations of p at `level`.
  std::vector<std::pair<int, Weights>> reps;
  if (p.is_glued()) {
    for (int c = 0; c < kGasketComponents; ++c)
      for (std::size_t i = 0; i < 3; ++i)
        if (table_.labels[static_cast<std::size_t>(c)][i] == p.label()) {
          Weights w{};
          w[i] = pow2(level);
          reps.emplace_back(c + 1, w);
        }
  } else {
    Weights w = p.weights();
    for (auto& x : w) x *= pow2(level - p.level());
    reps.emplace_back(p.component(), w);
  }
  std::set<Point> out;
  for (const auto& [c, w] : reps)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j || w[i] == 0) continue;
        Weights v = w;
        --v[i];
        ++v[j];
        if (gasket_vertex_valid(v, level)) out.insert(Point::vertex(table_, c, v, level));
      }
  return {out.begin(), out.end()};
}

std::string GasketSystem::format(const Point& p) const {
  if (p.is_glued()) return std::string(1, p.label());
  static constexpr char kLetter[3] = {'t', 'l', 'r'};
  std::string out = "Y" + std::to_string(p.component()) + ":";
  Weights w = p.weights();
  for (int n = p.level(); n > 0; --n) {
    int s = first_sub(w, n);
    out.push_back(kLetter[s]);
    w[static_cast<std::size_t>(s)] -= pow2(n - 1);
  }
  out.push_back('.');
  out.push_back(kLetter[w[0] == 1 ? 0 : w[1] == 1 ? 1 : 2]);
  return out;
}

GasketPoint GasketSystem::parse(std::string_view text) const {
  if (text.size() == 1) return Point::glued(text[0]);
  auto bad = [&] {
    return std::invalid_argument("gasket point: expected 'A', 'B', 'C' or 'Y<c>:<address>.<corner>', got '" +
                                 std::string(text) + "'");
  };
  if (text.size() < 5 || text[0] != 'Y' || text[2] != ':' || text[1] < '1' || text[1] > '6') throw bad();
  auto dot = text.find('.');
  if (dot == std::string_view::npos || dot + 2 != text.size()) throw bad();
  auto index = [&](char c) {
    switch (c) {
      case 't': return 0;
      case 'l': return 1;
      case 'r': return 2;
      default: throw bad();
    }
  };
  std::string_view addr = text.substr(3, dot - 3);
  if (static_cast<int>(addr.size()) > kGasketMaxLevel) throw bad();
  Weights w{};
  w[static_cast<std::size_t>(index(text.back()))] = 1;
  int level = 0;
  for (auto it = addr.rbegin(); it != addr.rend(); ++it, ++level) w[static_cast<std::size_t>(index(*it))] += pow2(level);
  return Point::vertex(table_, text[1] - '0', w, level);
}

int GasketSystem::max_preimage_count() const {
  int best = 1 + kGasketComponents;  // glued vertex: itself and one midpoint per component
  for (int j = 0; j < kGasketComponents; ++j) {
    int n = 0;
    for (const auto& row : table_.targets)
      for (int t : row) n += t == j;
    best = std::max(best, n);
  }
  return best;
}

}  // namespace invlim
