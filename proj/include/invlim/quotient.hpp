#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invlim/axioms.hpp"
#include "invlim/shift.hpp"
#include "invlim/thread.hpp"
#include "invlim/words.hpp"

namespace invlim {

/// The quotient of a two-sided SFT by the stable classes of the 1-block
/// cylinder partition: the one-sided shift on the same graph, with the left
/// shift as the induced map.
class QuotientSystem {
 public:
  /// Throws std::invalid_argument for a reducible spec.
  explicit QuotientSystem(EdgeShiftSpec spec);

  const EdgeShiftSpec& base() const { return base_; }
  const ShiftSystem& system() const { return quotient_; }
  OneSidedWord alpha(const OneSidedWord& w) const { return w.shifted(); }

 private:
  EdgeShiftSpec base_;
  ShiftSystem quotient_;
};

/// The class of x: its forward ray (x_0, x_1, ...).
inline OneSidedWord quotient_map(const TwoSidedWord& x) { return x.ray(0); }

/// (q(x), q(f^-1 x), ..., q(f^-depth x)); entry n is the ray from -n.
Thread<ShiftSystem> omega(const ShiftSystem& quotient, const TwoSidedWord& x, int depth);

/// z_i = past_i for i < 0 and future_i for i >= 0.
TwoSidedWord splice(const TwoSidedWord& past, const TwoSidedWord& future);

/// A two-sided word whose omega-image to depth N is the given thread: the
/// last entry read from index -N on, preceded by a periodic admissible past
/// (smallest predecessors).
TwoSidedWord reconstruct(const EdgeShiftSpec& spec, const Thread<ShiftSystem>& thread);

struct ConjugacyReport {
  int depth = 0;
  std::size_t samples = 0;
  std::size_t commutation_failures = 0;
  /// Pairs of distinct samples with equal threads to `depth`.
  std::size_t injectivity_failures = 0;
  /// Largest first-difference index over pairs of distinct samples.
  int required_depth = 0;
  std::size_t surjectivity_threads = 0;
  std::size_t surjectivity_failures = 0;
  std::vector<std::string> failures;  // first few, in sample order
  bool pass() const { return commutation_failures == 0 && injectivity_failures == 0 && surjectivity_failures == 0; }
};

/// (i) omega(f x) = g^(omega(x)) entrywise; (ii) distinct samples give
/// distinct threads; (iii) every depth-N thread whose last entry has
/// |pre| + |period| <= surjectivity_size is omega of a reconstructed word.
ConjugacyReport verify_conjugacy(const EdgeShiftSpec& spec, const std::vector<TwoSidedWord>& samples, int depth,
                                 std::size_t surjectivity_size = 6);

/// Seeded random admissible two-sided words: |left|, |core|, |right| up to
/// max_part and core start in [-max_part, max_part].
std::vector<TwoSidedWord> random_two_sided(const EdgeShiftSpec& spec, std::size_t count, std::size_t max_part,
                                           std::uint64_t seed);

struct QuotientConstants {
  std::optional<AxiomConstants> constants;
  SearchResult search;
};

/// search_axiom_constants on the quotient at resolution 1/256 over K in 1..2,
/// gamma in {1/4, 1/2, 3/4}, beta in {1/2, 1/4, 1/8}.
QuotientConstants quotient_axiom_constants(const EdgeShiftSpec& spec, int jobs = 1);

}  // namespace invlim
