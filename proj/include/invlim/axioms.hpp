#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invlim/parallel.hpp"
#include "invlim/rational.hpp"
#include "invlim/system.hpp"

namespace invlim {

/// A violated instance of an axiom, in textual point notation so that it can
/// be written out and replayed.
///
/// kind "axiom1": points (x, y); values d_xy, num = d(g^K x, g^K y),
///   den = d(g^2K x, g^2K y).
/// kind "axiom1-zero-denominator": as above with den = 0 < num.
/// kind "axiom2": points (x, w); values epsilon, d_w_gKx, min_distance
///   (min over the certificate of d(u, x)), radius = gamma * epsilon;
///   certificate = all u with g^2K(u) = g^K(w).
struct Witness {
  std::string kind;
  std::vector<std::string> points;
  std::vector<std::pair<std::string, Rational>> values;
  std::vector<std::string> certificate;

  const Rational& value(const std::string& name) const;
  friend bool operator==(const Witness&, const Witness&) = default;
};

inline constexpr std::size_t kMaxWitnesses = 8;

/// worst: for axiom 1 the largest d(g^K x, g^K y) / d(g^2K x, g^2K y) over
/// pairs with nonzero denominator (pass needs worst <= gamma^K); for axiom 2
/// the largest min_u d(u, x) / epsilon over samples with epsilon > 0 (pass
/// needs worst <= gamma).
struct AxiomReport {
  int axiom = 1;
  AxiomConstants constants;
  Rational resolution;
  std::size_t net_size = 0;
  bool pass = true;
  std::optional<Rational> worst;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  /// Axiom 1: pairs with d(g^2K x, g^2K y) = 0 < d(g^K x, g^K y).
  std::uint64_t zero_denominator = 0;
  std::vector<Witness> witnesses;
  /// Axiom 1 only, when requested: ratio -> number of pairs.
  std::map<Rational, std::uint64_t> ratio_histogram;

  friend bool operator==(const AxiomReport&, const AxiomReport&) = default;
};

struct CheckOptions {
  int jobs = 1;
  bool histogram = false;
};

/// Which epsilons Axiom 2 is tested at. `critical`: for each sample w the
/// smallest admissible epsilon, d(w, g^K x), which covers every epsilon in
/// (0, beta] at once. Otherwise each listed epsilon separately.
struct EpsilonSpec {
  bool critical = true;
  std::vector<Rational> list;

  static EpsilonSpec all() { return {}; }
  static EpsilonSpec listed(std::vector<Rational> eps) { return {false, std::move(eps)}; }
};

namespace detail {

template <class P>
struct Iterates {
  std::vector<P> gK, g2K;
};

template <DynamicalSystem S>
Iterates<PointOf<S>> compute_iterates(const S& sys, const std::vector<PointOf<S>>& pts, int K, int jobs) {
  auto parts = run_blocks<Iterates<PointOf<S>>>(pts.size(), 256, jobs, [&](std::size_t b, std::size_t e) {
    Iterates<PointOf<S>> r;
    for (std::size_t i = b; i < e; ++i) {
      r.gK.push_back(iterate(sys, pts[i], K));
      r.g2K.push_back(iterate(sys, r.gK.back(), K));
    }
    return r;
  });
  Iterates<PointOf<S>> out;
  for (auto& p : parts) {
    out.gK.insert(out.gK.end(), p.gK.begin(), p.gK.end());
    out.g2K.insert(out.g2K.end(), p.g2K.begin(), p.g2K.end());
  }
  return out;
}

struct Partial {
  std::uint64_t zero_den = 0;
  std::optional<Rational> worst;
  std::uint64_t pairs = 0;
  std::uint64_t violations = 0;
  std::vector<Witness> witnesses;
  std::map<Rational, std::uint64_t> histogram;
};

// Merge in block order: deterministic whatever the scheduling.
inline void merge_into(Partial& acc, Partial&& p) {
  acc.zero_den += p.zero_den;
  if (p.worst && (!acc.worst || *acc.worst < *p.worst)) acc.worst = std::move(p.worst);
  acc.pairs += p.pairs;
  acc.violations += p.violations;
  for (auto& w : p.witnesses)
    if (acc.witnesses.size() < kMaxWitnesses) acc.witnesses.push_back(std::move(w));
  for (auto& [r, n] : p.histogram) acc.histogram[r] += n;
}

template <DynamicalSystem S>
std::vector<std::string> format_all(const S& sys, const std::vector<PointOf<S>>& pts) {
  std::vector<std::string> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(sys.format(p));
  return out;
}

}  // namespace detail

/// Axiom 1 over every unordered pair (diagonal included) of the net with
/// d(x, y) <= beta.
template <DynamicalSystem S>
AxiomReport check_axiom1(const S& sys, const AxiomConstants& c, const Net<PointOf<S>>& net,
                         const CheckOptions& opt = {}) {
  c.validate();
  const auto& pts = net.points;
  const auto it = detail::compute_iterates(sys, pts, c.K, opt.jobs);
  const Rational bound = pow(c.gamma, c.K);
  auto parts = run_blocks<detail::Partial>(pts.size(), 16, opt.jobs, [&](std::size_t b, std::size_t e) {
    detail::Partial r;
    for (std::size_t i = b; i < e; ++i) {
      ++r.pairs;  // (x, x)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        Rational dxy = sys.distance(pts[i], pts[j]);
        if (dxy > c.beta) continue;
        ++r.pairs;
        Rational num = sys.distance(it.gK[i], it.gK[j]);
        Rational den = sys.distance(it.g2K[i], it.g2K[j]);
        bool bad;
        std::string kind = "axiom1";
        if (den.is_zero()) {
          bad = !num.is_zero();
          if (bad) {
            ++r.zero_den;
            kind = "axiom1-zero-denominator";
          }
        } else {
          Rational ratio = num / den;
          bad = ratio > bound;
          if (opt.histogram) ++r.histogram[ratio];
          if (!r.worst || *r.worst < ratio) r.worst = std::move(ratio);
        }
        if (bad) {
          ++r.violations;
          if (r.witnesses.size() < kMaxWitnesses)
            r.witnesses.push_back(Witness{kind,
                                          {sys.format(pts[i]), sys.format(pts[j])},
                                          {{"d_xy", dxy}, {"num", num}, {"den", den}},
                                          {}});
        }
      }
    }
    return r;
  });
  detail::Partial acc;
  for (auto& p : parts) detail::merge_into(acc, std::move(p));
  AxiomReport rep;
  rep.axiom = 1;
  rep.constants = c;
  rep.resolution = net.resolution;
  rep.net_size = pts.size();
  rep.pass = acc.violations == 0;
  rep.worst = std::move(acc.worst);
  rep.pairs_checked = acc.pairs;
  rep.violations = acc.violations;
  rep.zero_denominator = acc.zero_den;
  rep.witnesses = std::move(acc.witnesses);
  rep.ratio_histogram = std::move(acc.histogram);
  return rep;
}

template <DynamicalSystem S>
AxiomReport check_axiom1(const S& sys, const AxiomConstants& c, const Rational& resolution,
                         const CheckOptions& opt = {}) {
  return check_axiom1(sys, c, make_net(sys, resolution), opt);
}

/// Axiom 2 on the net: for every net point x and net sample w with
/// d(w, g^K x) <= epsilon, some u with g^2K(u) = g^K(w) has d(u, x) <= gamma
/// epsilon. The u are enumerated exactly with preimages_k.
template <DynamicalSystem S>
AxiomReport check_axiom2(const S& sys, const AxiomConstants& c, const Net<PointOf<S>>& net, const EpsilonSpec& eps,
                         const CheckOptions& opt = {}) {
  c.validate();
  for (const auto& e : eps.list) {
    if (e.sign() <= 0) throw std::invalid_argument("axiom 2: epsilon must be positive");
    if (e > c.beta) throw std::invalid_argument("axiom 2: epsilon " + e.str() + " exceeds beta");
  }
  AxiomReport rep;
  rep.axiom = 2;
  rep.constants = c;
  rep.resolution = net.resolution;
  rep.net_size = net.points.size();
  if (!eps.critical && eps.list.empty()) return rep;

  const auto& pts = net.points;
  const auto it = detail::compute_iterates(sys, pts, c.K, opt.jobs);
  Rational reach = c.beta;
  if (!eps.critical) reach = *std::max_element(eps.list.begin(), eps.list.end());

  // P(w) = g^-2K(g^K w), shared by all x.
  auto pre_parts = run_blocks<std::vector<std::vector<PointOf<S>>>>(pts.size(), 64, opt.jobs,
                                                                      [&](std::size_t b, std::size_t e) {
                                                                        std::vector<std::vector<PointOf<S>>> r;
                                                                        for (std::size_t i = b; i < e; ++i)
                                                                          r.push_back(preimages_k(sys, it.gK[i], 2 * c.K));
                                                                        return r;
                                                                      });
  std::vector<std::vector<PointOf<S>>> pre;
  for (auto& p : pre_parts)
    for (auto& v : p) pre.push_back(std::move(v));

  auto parts = run_blocks<detail::Partial>(pts.size(), 16, opt.jobs, [&](std::size_t b, std::size_t e) {
    detail::Partial r;
    for (std::size_t i = b; i < e; ++i) {
      const auto& x = pts[i];
      for (std::size_t j = 0; j < pts.size(); ++j) {
        Rational dist = sys.distance(pts[j], it.gK[i]);
        if (dist > reach) continue;
        Rational m = min_distance_to(sys, pre[j], x);
        auto test = [&](const Rational& epsilon) {
          ++r.pairs;
          if (epsilon.is_zero()) return;  // u = x
          Rational ratio = m / epsilon;
          if (!r.worst || *r.worst < ratio) r.worst = ratio;
          if (opt.histogram) ++r.histogram[ratio];
          if (ratio <= c.gamma) return;
          ++r.violations;
          if (r.witnesses.size() < kMaxWitnesses)
            r.witnesses.push_back(Witness{
                "axiom2",
                {sys.format(x), sys.format(pts[j])},
                {{"epsilon", epsilon}, {"d_w_gKx", dist}, {"min_distance", m}, {"radius", c.gamma * epsilon}},
                detail::format_all(sys, pre[j])});
        };
        if (eps.critical) {
          test(dist);
        } else {
          for (const auto& epsilon : eps.list)
            if (dist <= epsilon) test(epsilon);
        }
      }
    }
    return r;
  });
  detail::Partial acc;
  for (auto& p : parts) detail::merge_into(acc, std::move(p));
  rep.pass = acc.violations == 0;
  rep.worst = std::move(acc.worst);
  rep.pairs_checked = acc.pairs;
  rep.violations = acc.violations;
  rep.witnesses = std::move(acc.witnesses);
  rep.ratio_histogram = std::move(acc.histogram);
  return rep;
}

template <DynamicalSystem S>
AxiomReport check_axiom2(const S& sys, const AxiomConstants& c, const Rational& resolution, const EpsilonSpec& eps,
                         const CheckOptions& opt = {}) {
  return check_axiom2(sys, c, make_net(sys, resolution), eps, opt);
}

/// Re-derives a witness from the raw metric and map. Returns an empty string
/// when the violation reproduces exactly, otherwise the reason it does not.
template <DynamicalSystem S>
std::string replay_witness(const S& sys, const AxiomConstants& c, const Witness& w) {
  try {
    c.validate();
    if (w.kind == "axiom1" || w.kind == "axiom1-zero-denominator") {
      if (w.points.size() != 2) return "expected two points";
      auto x = sys.parse(w.points[0]), y = sys.parse(w.points[1]);
      Rational dxy = sys.distance(x, y);
      Rational num = sys.distance(iterate(sys, x, c.K), iterate(sys, y, c.K));
      Rational den = sys.distance(iterate(sys, x, 2 * c.K), iterate(sys, y, 2 * c.K));
      if (dxy != w.value("d_xy") || num != w.value("num") || den != w.value("den")) return "recorded values differ";
      if (dxy > c.beta) return "d(x,y) exceeds beta";
      if (w.kind == "axiom1-zero-denominator") return den.is_zero() && !num.is_zero() ? "" : "not a zero-denominator pair";
      return num > pow(c.gamma, c.K) * den ? "" : "inequality holds";
    }
    if (w.kind == "axiom2") {
      if (w.points.size() != 2) return "expected two points";
      auto x = sys.parse(w.points[0]), s = sys.parse(w.points[1]);
      const Rational& epsilon = w.value("epsilon");
      if (epsilon.sign() <= 0 || epsilon > c.beta) return "epsilon outside (0, beta]";
      if (sys.distance(s, iterate(sys, x, c.K)) > epsilon) return "w is not in the epsilon ball";
      auto pre = preimages_k(sys, iterate(sys, s, c.K), 2 * c.K);
      if (detail::format_all(sys, pre) != w.certificate) return "certificate differs from the preimage set";
      const Rational radius = c.gamma * epsilon;
      for (const auto& u : pre)
        if (sys.distance(u, x) <= radius) return "preimage " + sys.format(u) + " lies in the ball";
      return "";
    }
    return "unknown witness kind '" + w.kind + "'";
  } catch (const std::exception& e) {
    return e.what();
  }
}

struct CandidateSummary {
  AxiomConstants constants;
  bool axiom1_pass = false;
  std::optional<Rational> axiom1_worst;
  bool axiom1_zero_denominator = false;
  std::optional<bool> axiom2_pass;  // unset when axiom 1 already failed
  std::optional<Rational> axiom2_worst;
};

struct SearchResult {
  std::optional<AxiomConstants> best;
  std::optional<AxiomReport> axiom1, axiom2;
  std::vector<CandidateSummary> candidates;
};

struct SearchGrid {
  int K_min = 1, K_max = 1;
  std::vector<Rational> gammas, betas;
};

/// Best passing constants in the order: smallest K, then largest beta, then
/// smallest gamma. Verdicts for every gamma are read off one pair of checks
/// per (K, beta) since both axioms pass exactly when the worst ratio is
/// within gamma^K (axiom 1) or gamma (axiom 2).
template <DynamicalSystem S>
SearchResult search_axiom_constants(const S& sys, const SearchGrid& grid, const Rational& resolution,
                                    const CheckOptions& opt = {}) {
  if (grid.gammas.empty() || grid.betas.empty() || grid.K_min < 1 || grid.K_max < grid.K_min)
    throw std::invalid_argument("search: empty grid");
  auto gammas = grid.gammas, betas = grid.betas;
  std::sort(gammas.begin(), gammas.end());
  gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
  std::sort(betas.begin(), betas.end(), [](const Rational& a, const Rational& b) { return b < a; });
  betas.erase(std::unique(betas.begin(), betas.end()), betas.end());
  const auto net = make_net(sys, resolution);

  SearchResult out;
  CheckOptions quiet = opt;
  quiet.histogram = false;
  for (int K = grid.K_min; K <= grid.K_max; ++K) {
    for (const auto& beta : betas) {
      AxiomConstants probe{beta, K, gammas.back()};
      auto a1 = check_axiom1(sys, probe, net, quiet);
      const bool zero_den = a1.zero_denominator > 0;
      std::optional<AxiomReport> a2;
      for (const auto& gamma : gammas) {
        CandidateSummary cs;
        cs.constants = {beta, K, gamma};
        cs.axiom1_zero_denominator = zero_den;
        cs.axiom1_worst = a1.worst;
        cs.axiom1_pass = !zero_den && (!a1.worst || *a1.worst <= pow(gamma, K));
        if (cs.axiom1_pass) {
          if (!a2) a2 = check_axiom2(sys, probe, net, EpsilonSpec::all(), quiet);
          cs.axiom2_worst = a2->worst;
          cs.axiom2_pass = !a2->worst || *a2->worst <= gamma;
        }
        out.candidates.push_back(cs);
        if (cs.axiom1_pass && *cs.axiom2_pass) {
          out.best = cs.constants;
          out.axiom1 = check_axiom1(sys, cs.constants, net, opt);
          out.axiom2 = check_axiom2(sys, cs.constants, net, EpsilonSpec::all(), opt);
          return out;
        }
      }
    }
  }
  return out;
}

}  // namespace invlim
