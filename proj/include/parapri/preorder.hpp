#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/theory.hpp"

namespace parapri {

/// A prioritized default pre-order (D; R) together with fixtures.
struct PreorderSpec {
  std::vector<LabeledFormula> defaults;
  PriorityOrder priority;  // over the default labels; may have no edges
  std::vector<Formula> fixtures;

  static PreorderSpec of(const Theory& t);
  /// Defaults with the empty priority order.
  static PreorderSpec parallel(std::vector<Formula> defaults, std::vector<Formula> fixtures = {});
};

/// z <= z2 under (D; R): for every i whose strict dominators all have the
/// same truth value in z and z2, D_i(z) implies D_i(z2).
/// Throws ValidationError when the universes differ.
bool default_leq(const PreorderSpec& spec, const Interpretation& z, const Interpretation& z2);

/// Every fixture has the same truth value in z and z2.
bool fixture_equiv(std::span<const Formula> fixtures, const Interpretation& z, const Interpretation& z2);

/// z2 is fixture-equivalent to z and strictly above it in the pre-order.
bool strictly_better(const PreorderSpec& spec, const Interpretation& z2, const Interpretation& z);

/// A PreorderSpec compiled against one universe. Each interpretation is
/// summarized by its default and fixture truth vectors; comparisons then work
/// word-wise on those vectors.
class CompiledPreorder {
 public:
  CompiledPreorder(const PreorderSpec& spec, const Universe& universe);

  struct Profile {
    std::vector<std::uint64_t> defaults;
    std::vector<std::uint64_t> fixtures;
  };

  Profile profile(std::uint64_t bits) const;

  bool leq(const Profile& z, const Profile& z2) const;
  bool fixture_equiv(const Profile& z, const Profile& z2) const { return z.fixtures == z2.fixtures; }
  bool strictly_better(const Profile& z2, const Profile& z) const {
    return fixture_equiv(z, z2) && leq(z, z2) && !leq(z2, z);
  }

 private:
  std::size_t words_;
  std::vector<CompiledFormula> defaults_;
  std::vector<CompiledFormula> fixtures_;
  std::vector<std::vector<std::uint64_t>> dominators_;  // per default, as a bit mask
  bool prioritized_ = false;
};

}  // namespace parapri
