#include "parapri/limits.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "parapri/error.hpp"

namespace parapri {

Limits Limits::from_env() {
  const char* value = std::getenv("PARAPRI_MAX_ATOMS");
  return with_atom_override(value == nullptr ? std::string_view{} : std::string_view{value});
}

Limits Limits::with_atom_override(std::string_view value) {
  Limits limits;
  if (value.empty()) return limits;
  std::size_t cap = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, cap);
  if (ec != std::errc{} || ptr != end || cap > kMaxPackedAtoms) {
    throw ValidationError("PARAPRI_MAX_ATOMS must be an integer in [0, " +
                          std::to_string(kMaxPackedAtoms) + "], got '" + std::string(value) + "'");
  }
  limits.tautology_atoms = cap;
  limits.model_atoms = cap;
  limits.preorder_atoms = cap;
  return limits;
}

void check_atom_cap(std::size_t atoms, std::size_t cap, std::string_view what) {
  if (atoms > cap || atoms > kMaxPackedAtoms) {
    throw CapExceeded(std::string(what) + ": " + std::to_string(atoms) +
                      " atoms exceeds the brute-force cap of " + std::to_string(cap));
  }
}

}  // namespace parapri
