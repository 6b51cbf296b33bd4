#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/limits.hpp"
#include "parapri/theory.hpp"

namespace parapri {

/// Where one output formula came from: the source default index i, the
/// descending sequence of its dominators that was used, and the connective
/// bit string (bit k = '1' for and, '0' for or; k-th character pairs with the
/// k-th element of `sequence`).
struct Provenance {
  std::size_t source = 0;
  std::vector<std::size_t> sequence;
  std::string bits;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One member of the transform's output set: an unprioritized default tuple.
struct TransformOutput {
  std::vector<Formula> formulas;
  std::vector<Provenance> provenance;

  /// Labels `w_<i>_<bits>` (1-based i; just `w_<i>` when i has no dominators).
  std::vector<std::string> labels() const;

  /// `t` with its defaults replaced by these formulas and no priority.
  Theory to_theory(const Theory& t) const;
};

/// Indices strictly above `i`, ascending. Throws ValidationError on an
/// unknown index.
std::vector<std::size_t> dominators(const PriorityOrder& order, std::size_t i);

/// Every topological sort of dominators(i), higher priority first. Choice
/// points take the smallest available index first, so element 0 is the
/// canonical sequence. Stops after `limit` sequences.
std::vector<std::vector<std::size_t>> descending_sequences(const PriorityOrder& order, std::size_t i,
                                                           std::size_t limit = SIZE_MAX);

/// (E_s1 c1 (E_s2 c2 ( ... (E_sm cm E_i) ... ))) with c_k chosen by bits[k].
/// Throws ValidationError when |bits| != |sequence|.
Formula build_wil(std::span<const Formula> defaults, std::size_t i, std::span<const std::size_t> sequence,
                  std::string_view bits);

/// The transform using the canonical sequence per index. Per index, bit
/// strings run from all ones to all zeros, counting down with the first bit
/// least significant; blocks follow the default order.
/// Throws CapExceeded when the output would exceed limits.transform_formulas.
TransformOutput transform_canonical(std::span<const Formula> defaults, const PriorityOrder& order,
                                    const Limits& limits = {});

/// Up to `limit` members, one per combination of per-index sequences
/// (earlier indices vary slowest). The first member is transform_canonical's.
/// Throws ValidationError for limit == 0.
std::vector<TransformOutput> transform_all(std::span<const Formula> defaults, const PriorityOrder& order,
                                           std::size_t limit, const Limits& limits = {});

/// Transform output size without materializing it.
struct SizeReport {
  std::uint64_t total = 0;              // sum of 2^{m_i}, saturating
  bool saturated = false;
  std::vector<std::size_t> dominator_counts;  // m_i per index
  std::size_t max_dominators = 0;
  bool top_heavy = false;               // max m_i > threshold
};

SizeReport output_size(const PriorityOrder& order, std::size_t top_heavy_threshold = 10);

/// Shape of a priority order, used by `stats`.
enum class OrderShape { kParallel, kChain, kLayered, kColumnar, kGeneral };

struct OrderClassification {
  OrderShape shape;
  bool layered;   // totally ordered levels, every higher-level element above every lower one
  bool columnar;  // disjoint chains with no cross-chain edges
};

OrderClassification classify(const PriorityOrder& order);
std::string_view shape_name(OrderShape shape);

}  // namespace parapri
