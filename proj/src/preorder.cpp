#include "parapri/preorder.hpp"

#include <bit>

#include "parapri/error.hpp"

namespace parapri {

PreorderSpec PreorderSpec::of(const Theory& t) {
  return {t.defaults(), t.priority(), t.fixture_formulas()};
}

PreorderSpec PreorderSpec::parallel(std::vector<Formula> defaults, std::vector<Formula> fixtures) {
  PreorderSpec spec;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < defaults.size(); ++k) {
    labels.push_back("d" + std::to_string(k + 1));
    spec.defaults.push_back({labels.back(), std::move(defaults[k])});
  }
  spec.priority = PriorityOrder::parallel(std::move(labels));
  spec.fixtures = std::move(fixtures);
  return spec;
}

namespace {

void check_same_universe(const Interpretation& z, const Interpretation& z2) {
  if (!(z.universe() == z2.universe())) throw ValidationError("interpretations over different universes");
}

void check_spec(const PreorderSpec& spec) {
  if (spec.priority.size() != spec.defaults.size()) {
    throw ValidationError("priority order does not match the default tuple");
  }
}

}  // namespace

bool default_leq(const PreorderSpec& spec, const Interpretation& z, const Interpretation& z2) {
  check_same_universe(z, z2);
  check_spec(spec);
  const std::size_t n = spec.defaults.size();
  std::vector<bool> in_z(n), in_z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_z[i] = eval(spec.defaults[i].formula, z);
    in_z2[i] = eval(spec.defaults[i].formula, z2);
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool dominators_agree = true;
    for (std::size_t j = 0; j < n && dominators_agree; ++j) {
      if (spec.priority.dominates(j, i) && in_z[j] != in_z2[j]) dominators_agree = false;
    }
    if (dominators_agree && in_z[i] && !in_z2[i]) return false;
  }
  return true;
}

bool fixture_equiv(std::span<const Formula> fixtures, const Interpretation& z, const Interpretation& z2) {
  check_same_universe(z, z2);
  for (const auto& f : fixtures) {
    if (eval(f, z) != eval(f, z2)) return false;
  }
  return true;
}

bool strictly_better(const PreorderSpec& spec, const Interpretation& z2, const Interpretation& z) {
  return fixture_equiv(spec.fixtures, z, z2) && default_leq(spec, z, z2) && !default_leq(spec, z2, z);
}

// {{{ CompiledPreorder

CompiledPreorder::CompiledPreorder(const PreorderSpec& spec, const Universe& universe)
    : words_((spec.defaults.size() + 63) / 64) {
  check_spec(spec);
  for (const auto& d : spec.defaults) defaults_.emplace_back(d.formula, universe);
  for (const auto& f : spec.fixtures) fixtures_.emplace_back(f, universe);
  const std::size_t n = spec.defaults.size();
  dominators_.assign(n, std::vector<std::uint64_t>(words_, 0));
  for (const auto& [hi, lo] : spec.priority.closure()) {
    dominators_[lo][hi / 64] |= std::uint64_t{1} << (hi % 64);
    prioritized_ = true;
  }
}

CompiledPreorder::Profile CompiledPreorder::profile(std::uint64_t bits) const {
  Profile p;
  p.defaults.assign(words_, 0);
  for (std::size_t i = 0; i < defaults_.size(); ++i) {
    if (defaults_[i](bits)) p.defaults[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  p.fixtures.assign((fixtures_.size() + 63) / 64, 0);
  for (std::size_t k = 0; k < fixtures_.size(); ++k) {
    if (fixtures_[k](bits)) p.fixtures[k / 64] |= std::uint64_t{1} << (k % 64);
  }
  return p;
}

bool CompiledPreorder::leq(const Profile& z, const Profile& z2) const {
  for (std::size_t w = 0; w < words_; ++w) {
    // defaults true in z but false in z2
    std::uint64_t lost = z.defaults[w] & ~z2.defaults[w];
    if (!lost) continue;
    if (!prioritized_) return false;
    while (lost) {
      const std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(lost));
      lost &= lost - 1;
      bool excused = false;
      for (std::size_t v = 0; v < words_ && !excused; ++v) {
        excused = (dominators_[i][v] & (z.defaults[v] ^ z2.defaults[v])) != 0;
      }
      if (!excused) return false;
    }
  }
  return true;
}

// }}}

}  // namespace parapri
