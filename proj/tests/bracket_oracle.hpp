#pragma once

// Shared by the unit tests and the acceptance binary: on a shift of finite
// type the bracket of omega(s) and omega(t) must be omega of the word with
// t's past and s's future.

#include <map>
#include <string>

#include "invlim/quotient.hpp"
#include "invlim/smale.hpp"

namespace invlim::oracle {

struct BracketOracleResult {
  std::size_t words = 0;
  std::size_t pairs = 0;           // pairs with d^ certified <= eps_hat
  std::size_t mismatches = 0;      // bracket != omega(splice)
  std::size_t not_unique = 0;      // greatest-preimage run differs
  std::size_t not_member = 0;      // output outside W^s(x) or W^u(y)
  std::size_t no_preimage = 0;
  std::string first_failure;
};

inline BracketOracleResult bracket_oracle(const EdgeShiftSpec& spec, std::size_t max_size, std::int64_t min_start,
                                          std::int64_t max_start, const AxiomConstants& c, int target) {
  QuotientSystem q(spec);
  const auto& sys = q.system();
  const auto hc = derive_hat_constants(sys, c);
  const int depth = target + 3 * c.K;
  BracketOracleResult r;
  auto words = eventually_periodic_two_sided(spec, max_size, min_start, max_start);
  r.words = words.size();

  // Pairs within eps_hat agree on indices -2..4 at least, so only words in the
  // same bucket can qualify.
  std::map<Word, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Word key;
    for (std::int64_t n = -2; n <= 4; ++n) key.push_back(words[i].at(n));
    buckets[key].push_back(i);
  }
  std::vector<Thread<ShiftSystem>> threads;
  threads.reserve(words.size());
  for (const auto& w : words) threads.push_back(omega(sys, w, depth));

  auto fail = [&](std::size_t& counter, const std::string& what) {
    ++counter;
    if (r.first_failure.empty()) r.first_failure = what;
  };
  const auto& ab = spec.alphabet();
  for (const auto& [key, members] : buckets) {
    for (auto i : members)
      for (auto j : members) {
        const auto& x = threads[i];
        const auto& y = threads[j];
        if (metric_dhat(x, y, c).value.hi > hc.eps_hat) continue;
        ++r.pairs;
        const std::string tag = words[i].str(ab) + " , " + words[j].str(ab);
        try {
          auto z = bracket_construct(x, y, c, hc, target);
          auto want = omega(sys, splice(words[j], words[i]), target);
          if (z != want) fail(r.mismatches, "mismatch for " + tag);
          if (bracket_construct(x, y, c, hc, target, PreimageChoice::kGreatest) != z)
            fail(r.not_unique, "two admissible choices for " + tag);
          auto xs = Thread<ShiftSystem>(sys, {x.entries().begin(), x.entries().begin() + target + 1});
          auto ys = Thread<ShiftSystem>(sys, {y.entries().begin(), y.entries().begin() + target + 1});
          if (stable_membership(z, xs, hc.eps_prime, c).verdict == Tri::kFalse ||
              unstable_membership(z, ys, hc.eps_prime, c).verdict == Tri::kFalse)
            fail(r.not_member, "bracket leaves the local sets for " + tag);
        } catch (const NoAdmissiblePreimage& e) {
          fail(r.no_preimage, std::string(e.what()) + " for " + tag);
        }
      }
  }
  return r;
}

}  // namespace invlim::oracle
