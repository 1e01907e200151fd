#include "invlim/quotient.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace invlim {

namespace {

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

QuotientSystem::QuotientSystem(EdgeShiftSpec spec) : base_(spec), quotient_(std::move(spec), "quotient") {
  if (!is_irreducible(base_)) throw std::invalid_argument("quotient: the shift is not irreducible");
}

Thread<ShiftSystem> omega(const ShiftSystem& quotient, const TwoSidedWord& x, int depth) {
  if (depth < 0) throw std::invalid_argument("omega: negative depth");
  std::vector<OneSidedWord> e;
  e.reserve(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) e.push_back(x.ray(-n));
  return Thread<ShiftSystem>(quotient, std::move(e));
}

TwoSidedWord splice(const TwoSidedWord& past, const TwoSidedWord& future) {
  // Keep each tail's period blocks aligned with its own core boundary.
  const auto L = static_cast<std::int64_t>(past.left().size());
  const auto R = static_cast<std::int64_t>(future.right().size());
  const std::int64_t a = past.core_begin() - L * ceil_div(past.core_begin(), L);
  const std::int64_t b = future.core_end() + R * ceil_div(-future.core_end(), R);
  Word core;
  for (std::int64_t i = a; i < 0; ++i) core.push_back(past.at(i));
  for (std::int64_t i = 0; i < b; ++i) core.push_back(future.at(i));
  return TwoSidedWord(past.left(), std::move(core), future.right(), a);
}

TwoSidedWord reconstruct(const EdgeShiftSpec& spec, const Thread<ShiftSystem>& thread) {
  const OneSidedWord& last = thread.entries().back();
  // back[i+1] is the smallest predecessor of back[i]; stop at the first repeat.
  Word back{last.at(0)};
  std::vector<std::ptrdiff_t> seen(spec.size(), -1);
  seen[back[0]] = 0;
  while (true) {
    Symbol pred = 0;
    while (!spec.allowed(pred, back.back())) ++pred;
    if (seen[pred] < 0) {
      seen[pred] = static_cast<std::ptrdiff_t>(back.size());
      back.push_back(pred);
      continue;
    }
    // The cycle back[j] -> back[k] -> ... -> back[j+1] -> back[j] repeats to
    // the left; it must end with a symbol allowed before what follows.
    const auto j = static_cast<std::size_t>(seen[pred]);
    Word cycle, transient;
    if (j == 0) {
      cycle.push_back(back[0]);
      for (std::size_t i = back.size() - 1; i >= 1; --i) cycle.push_back(back[i]);
    } else {
      for (std::size_t i = back.size(); i-- > j;) cycle.push_back(back[i]);
      for (std::size_t i = j; i-- > 1;) transient.push_back(back[i]);
    }
    Word core = transient;
    core.insert(core.end(), last.preperiod().begin(), last.preperiod().end());
    const auto start = -static_cast<std::int64_t>(thread.depth()) - static_cast<std::int64_t>(transient.size());
    return TwoSidedWord(std::move(cycle), std::move(core), last.period(), start);
  }
}

ConjugacyReport verify_conjugacy(const EdgeShiftSpec& spec, const std::vector<TwoSidedWord>& samples, int depth,
                                 std::size_t surjectivity_size) {
  QuotientSystem q(spec);
  const ShiftSystem& sys = q.system();
  ConjugacyReport rep;
  rep.depth = depth;
  rep.samples = samples.size();
  auto note = [&rep](std::string s) {
    if (rep.failures.size() < 8) rep.failures.push_back(std::move(s));
  };
  const Alphabet& ab = spec.alphabet();

  std::vector<std::pair<std::vector<OneSidedWord>, std::size_t>> threads;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& x = samples[i];
    if (!spec.admissible(x)) throw std::invalid_argument("verify_conjugacy: sample " + x.str(ab) + " is not admissible");
    auto w = omega(sys, x, depth);
    if (omega(sys, shift_two_sided(x, 1), depth + 1) != apply_hat_g(w)) {
      ++rep.commutation_failures;
      note("commutation fails at " + x.str(ab));
    }
    threads.emplace_back(w.entries(), i);
  }

  // Distinct samples; the largest first-difference index over all pairs is
  // attained by neighbours in sorted order.
  std::sort(threads.begin(), threads.end());
  for (std::size_t i = 0; i + 1 < threads.size(); ++i) {
    const auto& a = threads[i];
    const auto& b = threads[i + 1];
    if (samples[a.second] == samples[b.second]) continue;
    std::size_t n = 0;
    while (n < a.first.size() && a.first[n] == b.first[n]) ++n;
    if (n == a.first.size()) {
      ++rep.injectivity_failures;
      note("equal threads for " + samples[a.second].str(ab) + " and " + samples[b.second].str(ab));
    } else {
      rep.required_depth = std::max(rep.required_depth, static_cast<int>(n));
    }
  }

  for (const auto& last : eventually_periodic_words(spec, surjectivity_size)) {
    ++rep.surjectivity_threads;
    std::vector<OneSidedWord> e{last};
    for (int n = 0; n < depth; ++n) e.push_back(e.back().shifted());
    std::reverse(e.begin(), e.end());
    Thread<ShiftSystem> t(sys, std::move(e));
    auto x = reconstruct(spec, t);
    if (!spec.admissible(x) || omega(sys, x, depth) != t) {
      ++rep.surjectivity_failures;
      note("no preimage for thread ending at " + last.str(ab));
    }
  }
  return rep;
}

std::vector<TwoSidedWord> random_two_sided(const EdgeShiftSpec& spec, std::size_t count, std::size_t max_part,
                                           std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto pick = [&gen](std::size_t n) { return static_cast<std::size_t>(gen() % n); };
  std::vector<TwoSidedWord> out;
  while (out.size() < count) {
    Word w(1 + pick(max_part) + pick(max_part + 1) + 1 + pick(max_part));
    for (auto& s : w) s = static_cast<Symbol>(pick(spec.size()));
    const std::size_t l = 1 + pick(std::min(max_part, w.size() - 1));
    const std::size_t r = 1 + pick(std::min(max_part, w.size() - l));
    Word left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(l));
    Word core(w.begin() + static_cast<std::ptrdiff_t>(l), w.end() - static_cast<std::ptrdiff_t>(r));
    Word right(w.end() - static_cast<std::ptrdiff_t>(r), w.end());
    const auto start = static_cast<std::int64_t>(pick(2 * max_part + 1)) - static_cast<std::int64_t>(max_part);
    TwoSidedWord s(std::move(left), std::move(core), std::move(right), start);
    if (spec.admissible(s)) out.push_back(std::move(s));
  }
  return out;
}

QuotientConstants quotient_axiom_constants(const EdgeShiftSpec& spec, int jobs) {
  QuotientSystem q(spec);
  SearchGrid grid{1, 2, {Rational(1, 4), Rational(1, 2), Rational(3, 4)}, {Rational(1, 2), Rational(1, 4), Rational(1, 8)}};
  CheckOptions opt;
  opt.jobs = jobs;
  QuotientConstants out;
  out.search = search_axiom_constants(q.system(), grid, Rational(1, 256), opt);
  out.constants = out.search.best;
  return out;
}

}  // namespace invlim
