#include "parapri/circumscription.hpp"

#include <algorithm>
#include <set>

#include "parapri/error.hpp"

namespace parapri {

std::vector<Interpretation> models_of(std::span<const Formula> base, const Universe& universe,
                                      const Limits& limits) {
  check_atom_cap(universe.size(), limits.model_atoms, "model enumeration");
  std::vector<CompiledFormula> compiled;
  compiled.reserve(base.size());
  for (const auto& f : base) compiled.emplace_back(f, universe);
  std::vector<Interpretation> out;
  const std::uint64_t count = std::uint64_t{1} << universe.size();
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    if (std::all_of(compiled.begin(), compiled.end(), [bits](const auto& f) { return f(bits); })) {
      out.emplace_back(universe, bits);
    }
  }
  return out;
}

std::string PreferredModelSet::str() const {
  std::string out;
  for (const auto& m : models) {
    out += m.str();
    out += '\n';
  }
  return out;
}

nlohmann::json PreferredModelSet::to_json() const {
  nlohmann::json j;
  j["universe"] = universe.atoms();
  j["models"] = nlohmann::json::array();
  for (const auto& m : models) {
    std::vector<std::string> true_atoms;
    for (std::size_t k = 0; k < universe.size(); ++k) {
      if (m.value(k)) true_atoms.push_back(universe.atoms()[k]);
    }
    j["models"].push_back(true_atoms);
  }
  return j;
}

PreferredModelSet preferred_models(const Theory& t, const Limits& limits) {
  const auto candidates = models_of(t.base(), t.universe(), limits);
  const CompiledPreorder order(PreorderSpec::of(t), t.universe());
  std::vector<CompiledPreorder::Profile> profiles;
  profiles.reserve(candidates.size());
  for (const auto& m : candidates) profiles.push_back(order.profile(m.bits()));

  PreferredModelSet result{t.universe(), {}};
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    bool dominated = false;
    for (std::size_t b = 0; b < candidates.size() && !dominated; ++b) {
      dominated = b != a && order.strictly_better(profiles[b], profiles[a]);
    }
    if (!dominated) result.models.push_back(candidates[a]);
  }
  return result;
}

bool skeptical_entails(const Theory& t, const Formula& q, const Limits& limits) {
  const auto preferred = preferred_models(t, limits);
  const CompiledFormula query(q, t.universe());
  return std::all_of(preferred.models.begin(), preferred.models.end(),
                     [&](const Interpretation& m) { return query(m.bits()); });
}

namespace {

std::set<std::vector<bool>> project_models(const PreferredModelSet& set, const std::vector<std::string>& atoms) {
  std::vector<std::size_t> idx;
  for (const auto& a : atoms) {
    auto k = set.universe.index_of(a);
    if (!k) throw ValidationError("projection atom '" + a + "' is not in the theory's universe");
    idx.push_back(*k);
  }
  std::set<std::vector<bool>> out;
  for (const auto& m : set.models) {
    std::vector<bool> key;
    key.reserve(idx.size());
    for (auto k : idx) key.push_back(m.value(k));
    out.insert(std::move(key));
  }
  return out;
}

}  // namespace

bool circ_equivalent(const Theory& a, const Theory& b, const std::optional<std::vector<std::string>>& project,
                     const Limits& limits) {
  std::vector<std::string> atoms;
  if (project) {
    atoms = *project;
    for (const auto& x : atoms) {
      if (!a.universe().contains(x) || !b.universe().contains(x)) {
        throw ValidationError("projection atom '" + x + "' is not shared by both theories");
      }
    }
  } else {
    atoms = a.universe().atoms();
    auto lhs = a.universe().atoms();
    auto rhs = b.universe().atoms();
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    if (lhs != rhs) throw ValidationError("theories have different universes; pass a projection");
  }
  return project_models(preferred_models(a, limits), atoms) == project_models(preferred_models(b, limits), atoms);
}

bool preorder_equivalent(const PreorderSpec& a, const PreorderSpec& b, const Universe& universe,
                         const Limits& limits) {
  check_atom_cap(universe.size(), limits.preorder_atoms, "pre-order comparison");
  const CompiledPreorder pa(a, universe);
  const CompiledPreorder pb(b, universe);
  const std::uint64_t count = std::uint64_t{1} << universe.size();
  std::vector<CompiledPreorder::Profile> qa, qb;
  qa.reserve(count);
  qb.reserve(count);
  for (std::uint64_t bits = 0; bits < count; ++bits) {
    qa.push_back(pa.profile(bits));
    qb.push_back(pb.profile(bits));
  }
  for (std::uint64_t x = 0; x < count; ++x) {
    for (std::uint64_t y = 0; y < count; ++y) {
      if (pa.leq(qa[x], qa[y]) != pb.leq(qb[x], qb[y])) return false;
    }
  }
  return true;
}

}  // namespace parapri
