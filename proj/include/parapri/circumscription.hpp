#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/limits.hpp"
#include "parapri/preorder.hpp"
#include "parapri/theory.hpp"

#include "json.hpp"

namespace parapri {

/// All satisfying assignments of `base`, in increasing bit order.
/// Throws CapExceeded when |universe| > limits.model_atoms.
std::vector<Interpretation> models_of(std::span<const Formula> base, const Universe& universe,
                                      const Limits& limits = {});

/// Models of the base not strictly dominated by any fixture-equivalent model
/// of the base.
struct PreferredModelSet {
  Universe universe;
  std::vector<Interpretation> models;  // increasing bit order

  /// One model per line (Interpretation::str()).
  std::string str() const;
  nlohmann::json to_json() const;
};

PreferredModelSet preferred_models(const Theory& t, const Limits& limits = {});

/// `q` holds in every preferred model (vacuously when there are none).
bool skeptical_entails(const Theory& t, const Formula& q, const Limits& limits = {});

/// Preferred-model sets of `a` and `b` restricted to `project` are equal.
/// Without a projection both universes must hold the same atoms.
/// Throws ValidationError when projection atoms are missing from either side.
bool circ_equivalent(const Theory& a, const Theory& b,
                     const std::optional<std::vector<std::string>>& project = std::nullopt,
                     const Limits& limits = {});

/// default_leq agrees under `a` and `b` on every ordered pair of
/// interpretations over `universe`. Fixtures are not consulted.
/// Throws CapExceeded when |universe| > limits.preorder_atoms.
bool preorder_equivalent(const PreorderSpec& a, const PreorderSpec& b, const Universe& universe,
                         const Limits& limits = {});

}  // namespace parapri
