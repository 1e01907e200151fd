#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invlim/rational.hpp"
#include "invlim/system.hpp"
#include "invlim/thread.hpp"

namespace invlim {

/// eps_prime: d^ <= eps_prime keeps d^(g^-n x, g^-n y) <= beta for n < 2K.
/// eps_double_prime: d^ <= eps_double_prime gives d^(g^x, g^y) <= eps_prime.
/// eps_hat: d <= eps_hat keeps d(g^n x, g^n y) <= gamma^(K-1) eps'' / 2K for K <= n < 2K.
struct DerivedHatConstants {
  Rational eps_prime, eps_double_prime, eps_hat;
  friend bool operator==(const DerivedHatConstants&, const DerivedHatConstants&) = default;
};

/// Smale space constants of the inverse limit: stable/unstable sets of size
/// eps_X contract at rate lambda, and the bracket is defined for d^ <= eps_X_prime.
struct SmaleConstants {
  Rational eps_X, eps_X_prime, lambda;
};

/// Conservative choices from two facts: d'(g^-m x, g^-m y) <= gamma^-m d'(x, y)
/// and d' <= d^. Backward: d^(g^-n x, g^-n y) <= gamma^-n sum_k gamma^-2k d^(x, y).
/// Forward: d^(g^x, g^y) <= max(d(g x_0, g y_0), gamma d') + sum_{1<=k<K} gamma^(1-2k) d'.
template <DynamicalSystem S>
DerivedHatConstants derive_hat_constants(const S& sys, const AxiomConstants& c) {
  c.validate();
  const Rational two(2);
  const Rational twoK(2 * c.K);
  Rational dilation(0);
  for (int k = 0; k < c.K; ++k) dilation += pow(c.gamma, -2 * k);
  dilation *= pow(c.gamma, -(2 * c.K - 1));
  DerivedHatConstants hc;
  hc.eps_prime = min(c.beta / two, c.beta / dilation);

  Rational forward(0);
  for (int k = 1; k < c.K; ++k) forward += pow(c.gamma, 1 - 2 * k);
  hc.eps_double_prime = min(hc.eps_prime / two, sys.modulus(1, hc.eps_prime / two));
  if (forward.sign() > 0) hc.eps_double_prime = min(hc.eps_double_prime, hc.eps_prime / (two * forward));

  const Rational target = pow(c.gamma, c.K - 1) * hc.eps_double_prime / twoK;
  hc.eps_hat = pow(c.gamma, c.K) * hc.eps_double_prime / twoK;
  for (int n = c.K; n < 2 * c.K; ++n) hc.eps_hat = min(hc.eps_hat, sys.modulus(n, target));
  if (hc.eps_prime.sign() <= 0 || hc.eps_double_prime.sign() <= 0 || hc.eps_hat.sign() <= 0)
    throw std::runtime_error("derive_hat_constants: modulus gives no positive constant");
  return hc;
}

inline SmaleConstants smale_constants(const AxiomConstants& c, const DerivedHatConstants& hc) {
  return {hc.eps_prime, hc.eps_hat, c.gamma};
}

struct Membership {
  Tri verdict = Tri::kIndeterminate;
  HatMetricValue dhat;
  int checked_depth = 0;
  std::string reason;
};

/// z in the local stable set of y: z_m = y_m for m < K and d^(y, z) <= eps.
template <DynamicalSystem S>
Membership stable_membership(const Thread<S>& z, const Thread<S>& y, const Rational& eps, const AxiomConstants& c) {
  Membership m;
  m.dhat = metric_dhat(y, z, c);
  m.checked_depth = m.dhat.depth;
  for (int i = 0; i < c.K; ++i)
    if (z[static_cast<std::size_t>(i)] != y[static_cast<std::size_t>(i)]) {
      m.verdict = Tri::kFalse;
      m.reason = "entry " + std::to_string(i) + " differs";
      return m;
    }
  m.verdict = leq(m.dhat.value, eps);
  if (m.verdict != Tri::kTrue) m.reason = "d^ in " + m.dhat.value.lo.str() + ".." + m.dhat.value.hi.str();
  return m;
}

/// z in the local unstable set of y: d(y_n, z_n) <= eps for all n up to the
/// common depth, and d^(y, z) <= eps.
template <DynamicalSystem S>
Membership unstable_membership(const Thread<S>& z, const Thread<S>& y, const Rational& eps, const AxiomConstants& c) {
  const S& sys = y.system();
  Membership m;
  m.dhat = metric_dhat(y, z, c);
  m.checked_depth = m.dhat.depth;
  for (int n = 0; n <= m.checked_depth; ++n)
    if (sys.distance(y[static_cast<std::size_t>(n)], z[static_cast<std::size_t>(n)]) > eps) {
      m.verdict = Tri::kFalse;
      m.reason = "entry " + std::to_string(n) + " is farther than eps";
      return m;
    }
  m.verdict = leq(m.dhat.value, eps);
  if (m.verdict != Tri::kTrue) m.reason = "d^ in " + m.dhat.value.lo.str() + ".." + m.dhat.value.hi.str();
  return m;
}

/// Raised when a stage finds no preimage in the required ball, i.e. Axiom 2
/// fails at the working resolution.
class NoAdmissiblePreimage : public std::runtime_error {
 public:
  NoAdmissiblePreimage(int stage, const std::string& what) : std::runtime_error(what), stage_(stage) {}
  int stage() const { return stage_; }

 private:
  int stage_;
};

enum class PreimageChoice { kLeast, kGreatest };

/// The point of the local stable set of x and the local unstable set of y.
/// z_m = x_m for m < K; stage s >= 1 picks u with g^2K(u) = z_{sK-1} and
/// d(u, y_{(s+2)K-1}) <= eps_hat, and sets z_{(s+1)K-1-j} = g^(K+j)(u).
template <DynamicalSystem S>
Thread<S> bracket_construct(const Thread<S>& x, const Thread<S>& y, const AxiomConstants& c,
                            const DerivedHatConstants& hc, int target, PreimageChoice choice = PreimageChoice::kLeast) {
  const S& sys = x.system();
  if (target < 0) throw std::invalid_argument("bracket: negative target depth");
  if (x.depth() < target + 3 * c.K || y.depth() < target + 3 * c.K)
    throw std::invalid_argument("bracket: threads must reach depth target + 3K = " + std::to_string(target + 3 * c.K));
  auto d = metric_dhat(x, y, c);
  if (d.value.hi > hc.eps_hat) throw std::invalid_argument("bracket: d^(x, y) is not certified <= eps_hat");

  const int K = c.K;
  const auto T = static_cast<std::size_t>(target);
  std::vector<PointOf<S>> z;
  for (int m = 0; m < K && static_cast<std::size_t>(m) <= T; ++m) z.push_back(x[static_cast<std::size_t>(m)]);
  z.resize(std::max<std::size_t>(T + 1, z.size()));
  PointOf<S> anchor = x[static_cast<std::size_t>(K - 1)];
  for (int s = 1; s * K <= target; ++s) {
    const auto& centre = y[static_cast<std::size_t>((s + 2) * K - 1)];
    std::vector<PointOf<S>> ok;
    for (auto& u : preimages_k(sys, anchor, 2 * K))
      if (sys.distance(u, centre) <= hc.eps_hat) ok.push_back(std::move(u));
    if (ok.empty())
      throw NoAdmissiblePreimage(s, "bracket: no admissible preimage at stage " + std::to_string(s) + " (anchor " +
                                        sys.format(anchor) + ")");
    PointOf<S> v = iterate(sys, choice == PreimageChoice::kLeast ? ok.front() : ok.back(), K);
    anchor = v;
    for (int j = 0; j < K; ++j) {
      const auto idx = static_cast<std::size_t>((s + 1) * K - 1 - j);
      if (idx <= T) z[idx] = v;
      v = sys.map(v);
    }
  }
  z.resize(T + 1);
  return Thread<S>(sys, std::move(z));
}

enum class ContractionKind {
  kStable,    // d^(g^y, g^z) <= gamma d^(y, z)
  kUnstable,  // d^(g^-1 y, g^-1 z) <= gamma d^(y, z)
};

struct ContractionOutcome {
  Tri verdict = Tri::kIndeterminate;
  RationalInterval left, right;
  int depth = 0;
  /// left == gamma * right as intervals.
  bool exact_scaling = false;
};

struct ContractionReport {
  ContractionKind kind = ContractionKind::kStable;
  std::uint64_t passed = 0, failed = 0, indeterminate = 0, exact_scaling = 0;
  int depth_cap = 0;
  int max_depth_used = 0;
  std::vector<ContractionOutcome> outcomes;
  bool pass() const { return failed == 0 && indeterminate == 0; }
};

/// Compares the two sides with interval soundness: pass when hi(left) <=
/// gamma lo(right), fail when lo(left) > gamma hi(right); otherwise both
/// threads are extended canonically by 8 entries, up to depth_cap.
template <DynamicalSystem S>
ContractionOutcome check_contraction(Thread<S> y, Thread<S> z, ContractionKind kind, const AxiomConstants& c,
                                     int depth_cap) {
  ContractionOutcome o;
  const int need = c.K - 1 + (kind == ContractionKind::kUnstable ? 1 : 0);
  if (y.depth() < need) y = extend_thread(y, need);
  if (z.depth() < need) z = extend_thread(z, need);
  while (true) {
    o.depth = std::min(y.depth(), z.depth());
    if (y == z) {
      // Equal truncations denote the same point.
      o.verdict = Tri::kTrue;
      o.exact_scaling = true;
      o.left = o.right = RationalInterval::point(Rational(0));
      return o;
    }
    o.right = metric_dhat(y, z, c).value;
    o.left = kind == ContractionKind::kStable ? metric_dhat(apply_hat_g(y), apply_hat_g(z), c).value
                                              : metric_dhat(apply_hat_g_inverse(y), apply_hat_g_inverse(z), c).value;
    const RationalInterval scaled = c.gamma * o.right;
    o.exact_scaling = o.left == scaled;
    if (o.left.hi <= scaled.lo) {
      o.verdict = Tri::kTrue;
      return o;
    }
    if (o.left.lo > scaled.hi) {
      o.verdict = Tri::kFalse;
      return o;
    }
    if (o.depth >= depth_cap) {
      o.verdict = Tri::kIndeterminate;
      return o;
    }
    const int next = std::min(depth_cap, o.depth + 8);
    y = extend_thread(y, next);
    z = extend_thread(z, next);
  }
}

template <DynamicalSystem S>
ContractionReport verify_contraction(const std::vector<std::pair<Thread<S>, Thread<S>>>& samples,
                                     ContractionKind kind, const AxiomConstants& c, int depth_cap) {
  ContractionReport rep;
  rep.kind = kind;
  rep.depth_cap = depth_cap;
  for (const auto& [y, z] : samples) {
    auto o = check_contraction(y, z, kind, c, depth_cap);
    rep.max_depth_used = std::max(rep.max_depth_used, o.depth);
    if (o.verdict == Tri::kTrue) ++rep.passed;
    if (o.verdict == Tri::kFalse) ++rep.failed;
    if (o.verdict == Tri::kIndeterminate) ++rep.indeterminate;
    if (o.exact_scaling) ++rep.exact_scaling;
    rep.outcomes.push_back(std::move(o));
  }
  return rep;
}

template <class P>
struct FiniteToOneReport {
  std::size_t max_count = 0;
  std::vector<P> witnesses;                    // points attaining max_count (at most 8)
  std::map<std::size_t, std::size_t> counts;  // preimage count -> number of net points
};

template <DynamicalSystem S>
FiniteToOneReport<PointOf<S>> finite_to_one_check(const S& sys, const Rational& resolution) {
  FiniteToOneReport<PointOf<S>> rep;
  for (const auto& y : sys.net(resolution)) {
    const std::size_t n = sys.preimages(y).size();
    ++rep.counts[n];
    if (n > rep.max_count) {
      rep.max_count = n;
      rep.witnesses.clear();
    }
    if (n == rep.max_count && rep.witnesses.size() < 8) rep.witnesses.push_back(y);
  }
  return rep;
}

/// Seeded sampling. Draws use `rng() % n` so that runs are identical across
/// standard libraries.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : gen_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

template <DynamicalSystem S>
Thread<S> random_thread(const S& sys, const PointOf<S>& start, int depth, SampleRng& rng) {
  return extend_thread(Thread<S>(sys, {start}), depth,
                       Chooser<PointOf<S>>([&rng](const std::vector<PointOf<S>>& pre, int) { return pre[rng.pick(pre.size())]; }));
}

/// Pairs (x, z) with z in the local stable set of x of size eps: z follows x
/// for the first M entries and then takes another preimage, where M is large
/// enough that gamma^M diam sum_k gamma^-2k <= eps.
template <DynamicalSystem S>
std::vector<std::pair<Thread<S>, Thread<S>>> sample_stable_pairs(const S& sys, const std::vector<PointOf<S>>& starts,
                                                                 const AxiomConstants& c, const Rational& eps,
                                                                 std::size_t count, int depth, std::uint64_t seed) {
  Rational spread(0);
  for (int k = 0; k < c.K; ++k) spread += pow(c.gamma, -2 * k);
  spread *= sys.diameter();
  int M = c.K;
  while (pow(c.gamma, M) * spread > eps) ++M;
  if (depth < M + 4) throw std::invalid_argument("sample_stable_pairs: depth must be at least " + std::to_string(M + 4));
  SampleRng rng(seed);
  std::vector<std::pair<Thread<S>, Thread<S>>> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    auto x = random_thread(sys, starts[rng.pick(starts.size())], depth, rng);
    const int branch = M + static_cast<int>(rng.pick(4));
    auto pre = sys.preimages(x[static_cast<std::size_t>(branch - 1)]);
    std::erase(pre, x[static_cast<std::size_t>(branch)]);
    if (pre.empty()) continue;
    std::vector<PointOf<S>> head(x.entries().begin(), x.entries().begin() + branch);
    head.push_back(pre[rng.pick(pre.size())]);
    auto z = random_thread(sys, head.back(), depth - branch, rng);
    head.insert(head.end(), z.entries().begin() + 1, z.entries().end());
    Thread<S> zt(sys, std::move(head));
    if (stable_membership(zt, x, eps, c).verdict == Tri::kTrue) out.emplace_back(std::move(x), std::move(zt));
  }
  return out;
}

/// Pairs (x, z) with z in the local unstable set of x of size eps: z_0 is a
/// neighbour of x_0 and z follows x backwards through nearest preimages.
/// Needs the system's neighbours(p, delta).
template <DynamicalSystem S>
std::vector<std::pair<Thread<S>, Thread<S>>> sample_unstable_pairs(const S& sys, const std::vector<PointOf<S>>& starts,
                                                                   const AxiomConstants& c, const Rational& eps,
                                                                   std::size_t count, int depth, std::uint64_t seed) {
  SampleRng rng(seed);
  std::vector<std::pair<Thread<S>, Thread<S>>> out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 50 * count; ++attempt) {
    auto x = random_thread(sys, starts[rng.pick(starts.size())], depth, rng);
    Rational delta = eps * pow(c.gamma, static_cast<int>(rng.pick(4)));
    for (int tries = 0; tries < 12; ++tries, delta *= c.gamma) {
      auto near = sys.neighbours(x[0], delta);
      if (near.empty()) break;
      auto z = extend_thread(Thread<S>(sys, {near[rng.pick(near.size())]}), depth, nearest_chooser(x));
      if (unstable_membership(z, x, eps, c).verdict == Tri::kTrue) {
        out.emplace_back(std::move(x), std::move(z));
        break;
      }
    }
  }
  return out;
}

template <class P>
struct DisconnectednessEvidence {
  std::vector<P> fibre;  // g^-n {y_0}
  std::size_t samples = 0;
  std::size_t outside = 0;
};

/// pi_n of sampled members of the local stable set of y lies in g^-n {y_0}.
template <DynamicalSystem S>
DisconnectednessEvidence<PointOf<S>> disconnectedness_evidence(const Thread<S>& y, const Rational& eps, int n,
                                                               const std::vector<Thread<S>>& members,
                                                               const AxiomConstants& c) {
  const S& sys = y.system();
  if (n < 0 || n > y.depth()) throw std::invalid_argument("disconnectedness_evidence: n outside 0..depth");
  DisconnectednessEvidence<PointOf<S>> ev;
  ev.fibre = n == 0 ? std::vector<PointOf<S>>{y[0]} : preimages_k(sys, y[0], n);
  for (const auto& z : members) {
    if (z.depth() < n || stable_membership(z, y, eps, c).verdict != Tri::kTrue) continue;
    ++ev.samples;
    if (!std::binary_search(ev.fibre.begin(), ev.fibre.end(), z[static_cast<std::size_t>(n)])) ++ev.outside;
  }
  return ev;
}

}  // namespace invlim
