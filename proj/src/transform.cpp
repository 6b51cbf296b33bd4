#include "parapri/transform.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "parapri/error.hpp"

namespace parapri {

std::vector<std::string> TransformOutput::labels() const {
  std::vector<std::string> out;
  out.reserve(provenance.size());
  for (const auto& p : provenance) {
    std::string l = "w_" + std::to_string(p.source + 1);
    if (!p.bits.empty()) l += "_" + p.bits;
    out.push_back(std::move(l));
  }
  return out;
}

Theory TransformOutput::to_theory(const Theory& t) const {
  const auto names = labels();
  std::vector<LabeledFormula> defaults;
  defaults.reserve(formulas.size());
  for (std::size_t k = 0; k < formulas.size(); ++k) defaults.push_back({names[k], formulas[k]});
  return t.with_parallel_defaults(std::move(defaults));
}

namespace {

void check_index(const PriorityOrder& order, std::size_t i) {
  if (i >= order.size()) throw ValidationError("unknown default index " + std::to_string(i));
}

}  // namespace

std::vector<std::size_t> dominators(const PriorityOrder& order, std::size_t i) {
  check_index(order, i);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < order.size(); ++j) {
    if (order.dominates(j, i)) out.push_back(j);
  }
  return out;
}

std::vector<std::vector<std::size_t>> descending_sequences(const PriorityOrder& order, std::size_t i,
                                                           std::size_t limit) {
  const std::vector<std::size_t> doms = dominators(order, i);
  std::vector<std::vector<std::size_t>> out;
  if (limit == 0) return out;
  std::vector<std::size_t> seq;
  std::vector<bool> used(doms.size(), false);

  // Backtracking over available elements: an element is available when every
  // unused element above it in the order has already been placed.
  std::function<bool()> extend = [&]() {
    if (seq.size() == doms.size()) {
      out.push_back(seq);
      return out.size() < limit;
    }
    for (std::size_t a = 0; a < doms.size(); ++a) {
      if (used[a]) continue;
      bool available = true;
      for (std::size_t b = 0; b < doms.size() && available; ++b) {
        if (!used[b] && order.dominates(doms[b], doms[a])) available = false;
      }
      if (!available) continue;
      used[a] = true;
      seq.push_back(doms[a]);
      const bool more = extend();
      seq.pop_back();
      used[a] = false;
      if (!more) return false;
    }
    return true;
  };
  extend();
  return out;
}

Formula build_wil(std::span<const Formula> defaults, std::size_t i, std::span<const std::size_t> sequence,
                  std::string_view bits) {
  if (bits.size() != sequence.size()) {
    throw ValidationError("bit string length " + std::to_string(bits.size()) + " does not match sequence length " +
                          std::to_string(sequence.size()));
  }
  if (i >= defaults.size()) throw ValidationError("unknown default index " + std::to_string(i));
  Formula w = defaults[i];
  for (std::size_t k = sequence.size(); k-- > 0;) {
    if (sequence[k] >= defaults.size()) throw ValidationError("unknown default index " + std::to_string(sequence[k]));
    if (bits[k] == '1') {
      w = Formula::conjunction(defaults[sequence[k]], w);
    } else if (bits[k] == '0') {
      w = Formula::disjunction(defaults[sequence[k]], w);
    } else {
      throw ValidationError("bit strings may contain only '0' and '1'");
    }
  }
  return w;
}

namespace {

void check_shape(std::span<const Formula> defaults, const PriorityOrder& order) {
  if (defaults.size() != order.size()) throw ValidationError("priority order does not match the default tuple");
}

void check_size(const PriorityOrder& order, const Limits& limits) {
  const SizeReport size = output_size(order, limits.top_heavy_threshold);
  if (size.saturated || size.total > limits.transform_formulas) {
    throw CapExceeded("transform would produce " +
                      (size.saturated ? std::string("more than 2^64") : std::to_string(size.total)) +
                      " formulas; cap is " + std::to_string(limits.transform_formulas));
  }
}

// Bit k of `value` becomes character k (first bit least significant).
std::string bit_string(std::uint64_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t k = 0; k < width; ++k) {
    if ((value >> k) & 1u) s[k] = '1';
  }
  return s;
}

void append_block(std::span<const Formula> defaults, std::size_t i, const std::vector<std::size_t>& sequence,
                  TransformOutput& out) {
  const std::size_t m = sequence.size();
  const std::uint64_t count = std::uint64_t{1} << m;
  for (std::uint64_t v = count; v-- > 0;) {
    std::string bits = bit_string(v, m);
    out.formulas.push_back(build_wil(defaults, i, sequence, bits));
    out.provenance.push_back({i, sequence, std::move(bits)});
  }
}

TransformOutput assemble(std::span<const Formula> defaults, const std::vector<std::vector<std::size_t>>& sequences) {
  TransformOutput out;
  for (std::size_t i = 0; i < defaults.size(); ++i) append_block(defaults, i, sequences[i], out);
  return out;
}

}  // namespace

TransformOutput transform_canonical(std::span<const Formula> defaults, const PriorityOrder& order,
                                    const Limits& limits) {
  check_shape(defaults, order);
  check_size(order, limits);
  std::vector<std::vector<std::size_t>> sequences;
  sequences.reserve(defaults.size());
  for (std::size_t i = 0; i < defaults.size(); ++i) sequences.push_back(descending_sequences(order, i, 1).front());
  return assemble(defaults, sequences);
}

std::vector<TransformOutput> transform_all(std::span<const Formula> defaults, const PriorityOrder& order,
                                           std::size_t limit, const Limits& limits) {
  if (limit == 0) throw ValidationError("member limit must be positive");
  check_shape(defaults, order);
  check_size(order, limits);
  // No index needs more than `limit` alternatives: the product is at least
  // as large as any one factor.
  std::vector<std::vector<std::vector<std::size_t>>> choices;
  for (std::size_t i = 0; i < defaults.size(); ++i) choices.push_back(descending_sequences(order, i, limit));

  std::vector<TransformOutput> members;
  std::vector<std::size_t> pick(defaults.size(), 0);
  std::vector<std::vector<std::size_t>> sequences(defaults.size());
  for (;;) {
    for (std::size_t i = 0; i < defaults.size(); ++i) sequences[i] = choices[i][pick[i]];
    members.push_back(assemble(defaults, sequences));
    if (members.size() >= limit) break;
    std::size_t i = defaults.size();
    while (i > 0) {
      if (++pick[i - 1] < choices[i - 1].size()) break;
      pick[i - 1] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return members;
}

SizeReport output_size(const PriorityOrder& order, std::size_t top_heavy_threshold) {
  SizeReport r;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::size_t m = 0;
    for (std::size_t j = 0; j < order.size(); ++j) m += order.dominates(j, i) ? 1 : 0;
    r.dominator_counts.push_back(m);
    r.max_dominators = std::max(r.max_dominators, m);
    if (m >= 64 || r.total > UINT64_MAX - (std::uint64_t{1} << m)) {
      r.saturated = true;
      r.total = UINT64_MAX;
    } else if (!r.saturated) {
      r.total += std::uint64_t{1} << m;
    }
  }
  r.top_heavy = r.max_dominators > top_heavy_threshold;
  return r;
}

OrderClassification classify(const PriorityOrder& order) {
  const std::size_t n = order.size();
  auto comparable = [&](std::size_t a, std::size_t b) { return order.dominates(a, b) || order.dominates(b, a); };

  // Level = length of the longest chain of dominators above an element.
  std::vector<std::size_t> level(n, 0);
  std::vector<std::size_t> by_doms(n);
  std::iota(by_doms.begin(), by_doms.end(), 0);
  const auto counts = output_size(order).dominator_counts;
  std::sort(by_doms.begin(), by_doms.end(), [&](auto a, auto b) { return counts[a] < counts[b]; });
  for (auto x : by_doms) {
    for (std::size_t j = 0; j < n; ++j) {
      if (order.dominates(j, x)) level[x] = std::max(level[x], level[j] + 1);
    }
  }
  bool layered = true;
  for (std::size_t a = 0; a < n && layered; ++a) {
    for (std::size_t b = 0; b < n && layered; ++b) {
      if (order.dominates(a, b) != (level[a] < level[b])) layered = false;
    }
  }

  // Weakly connected components, each of which must be totally ordered.
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return comp[x] == x ? x : comp[x] = find(comp[x]);
  };
  for (const auto& [hi, lo] : order.closure()) comp[find(hi)] = find(lo);
  bool columnar = true;
  std::size_t components = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (find(a) == a) ++components;
    for (std::size_t b = a + 1; b < n && columnar; ++b) {
      if (find(a) == find(b) && !comparable(a, b)) columnar = false;
    }
  }

  OrderShape shape = OrderShape::kGeneral;
  if (order.closure().empty()) {
    shape = OrderShape::kParallel;
  } else if (columnar && components == 1) {
    shape = OrderShape::kChain;
  } else if (layered) {
    shape = OrderShape::kLayered;
  } else if (columnar) {
    shape = OrderShape::kColumnar;
  }
  return {shape, layered, columnar};
}

std::string_view shape_name(OrderShape shape) {
  switch (shape) {
    case OrderShape::kParallel: return "parallel";
    case OrderShape::kChain: return "chain/columnar";
    case OrderShape::kLayered: return "layered";
    case OrderShape::kColumnar: return "columnar";
    case OrderShape::kGeneral: return "general";
  }
  return "general";
}

}  // namespace parapri
