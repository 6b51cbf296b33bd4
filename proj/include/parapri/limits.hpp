#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace parapri {

// Interpretations are packed into a 64-bit word; no cap may exceed this.
inline constexpr std::size_t kMaxPackedAtoms = 63;

/// Brute-force and output-size caps. Exceeding any of them raises
/// CapExceeded; nothing is silently truncated.
struct Limits {
  std::size_t tautology_atoms = 24;        // is_tautology / entails
  std::size_t model_atoms = 20;            // model enumeration
  std::size_t preorder_atoms = 12;         // pairwise pre-order comparison
  std::uint64_t transform_formulas = 1u << 20;
  std::size_t transform_members = 64;
  std::size_t top_heavy_threshold = 10;

  /// Defaults, with every atom cap replaced by $PARAPRI_MAX_ATOMS when set.
  static Limits from_env();

  /// Same as from_env() but reading the override from `value`
  /// (empty means unset). Throws ValidationError on a malformed value.
  static Limits with_atom_override(std::string_view value);
};

void check_atom_cap(std::size_t atoms, std::size_t cap, std::string_view what);

}  // namespace parapri
