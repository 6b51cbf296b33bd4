#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/limits.hpp"
#include "parapri/theory.hpp"
#include "parapri/transform.hpp"

namespace parapri {

enum class DropReason { kTautologicallyTrue, kTautologicallyFalse, kPositiveCombination };

std::string_view reason_name(DropReason r);

struct DroppedFormula {
  std::size_t index;                    // position in the input tuple
  Formula formula;
  DropReason reason;
  std::vector<std::size_t> witnesses;   // kept formulas it combines, for kPositiveCombination
  Formula combination;                  // the and/or combination over the witnesses
};

struct PruneReport {
  std::vector<std::size_t> kept_indices;
  std::vector<Formula> kept;
  std::vector<DroppedFormula> dropped;

  /// Human-readable report; `labels` name the input formulas.
  std::string str(std::span<const std::string> labels) const;
};

/// Drops every formula that, in all models of `base`, is constantly true,
/// constantly false, or coincides with a positive (and/or) combination of at
/// most `k` other formulas still kept. Scans from the last formula to the
/// first. The parallel circumscriptions over the kept and the full tuple are
/// checked to agree before returning (std::logic_error otherwise).
PruneReport prune_redundant(std::span<const Formula> w, std::span<const Formula> base, const Universe& universe,
                            std::size_t k = 2, const Limits& limits = {});

/// Same, scanning in provenance order: highest source index first, ties by
/// bit string descending.
PruneReport prune_redundant(const TransformOutput& w, std::span<const Formula> base, const Universe& universe,
                            std::size_t k = 2, const Limits& limits = {});

/// One of the inheritance examples (11, 12, 13): the prioritized default
/// theory over the taxonomy base, the parallel theory with the hand-derived
/// defaults, and the class atoms whose values describe an individual.
struct InheritanceExample {
  Theory prioritized;
  Theory parallel;
  std::vector<std::string> classes;
};

/// Throws ValidationError for an unknown example number.
InheritanceExample inheritance_example(int number);

/// The taxonomy base extended, in turn, by every consistent choice of
/// class literals (each class asserted, denied, or left open).
std::vector<std::vector<Formula>> scenario_bases(const InheritanceExample& ex);

/// The prioritized and hand-derived parallel theories have the same preferred
/// models under the taxonomy base and under every scenario base.
bool verify_special_case(int number, const Limits& limits = {});

// {{{ Abnormality encoding

struct Rule {
  std::string label;
  Formula condition;
  Formula consequent;

  Formula formula() const { return Formula::implication(condition, consequent); }
};

enum class CancellationVariant {
  kViolation,      // ~(c_j -> q_j) -> ab_i
  kClass,          // ~c_j -> ab_i
  kClassPositive,  // c_j -> ab_i
};

std::string_view variant_name(CancellationVariant v);
/// Accepts "violation", "class", "class-positive".
CancellationVariant parse_variant(std::string_view name);

/// Defaults of `t` read as rules; throws ValidationError unless every default
/// is an implication.
std::vector<Rule> rules_of(const Theory& t);

/// Guards each rule by a fresh atom `ab_<label>` (`~ab_i -> (c_i -> q_i)` in
/// the base), adds a cancellation axiom for every pair where j is above i,
/// and minimizes the abnormality atoms in parallel (defaults `~ab_i`).
/// The universe is `universe` followed by the fresh atoms. Throws
/// ValidationError if a fresh atom already exists or a label cannot name an atom.
Theory encode_abnormality(std::span<const Rule> rules, const PriorityOrder& priority, CancellationVariant variant,
                          std::span<const Formula> base, const Universe& universe);

/// The encoding of a fixture-free theory whose defaults are all implications.
Theory encode_abnormality(const Theory& t, CancellationVariant variant);

// }}}

}  // namespace parapri
