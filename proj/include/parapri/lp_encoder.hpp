#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/theory.hpp"

namespace parapri {

/// head :- positive..., not negative...
struct Clause {
  std::string head;
  std::vector<std::string> positive;
  std::vector<std::string> negative;
};

/// A propositional normal logic program.
struct Program {
  std::vector<Clause> clauses;

  /// Every atom, in first-mention order.
  std::vector<std::string> atoms() const;
};

/// Parses `h.` and `h :- b1, ..., not c1, ... .` statements. `%` and `#`
/// start line comments. Throws ParseError with the byte offset.
Program parse_program(std::string_view text);

/// Atom -> level, with level(head) >= level(b) for positive body atoms and
/// level(head) > level(c) for negated ones. Levels are the least such
/// assignment.
struct Stratification {
  std::map<std::string, std::size_t> stratum;
  std::size_t levels() const;
};

/// Throws NotStratifiedError, naming a cycle through negation, when no
/// stratification exists.
Stratification stratify(const Program& p);

/// Clauses become base implications; every atom a gets the default ~a
/// (labeled `min_<a>`); ~a is above ~b whenever a sits in a lower stratum
/// than b.
Theory encode_stratified(const Program& p);

/// Stratum-by-stratum least fixpoint, over the atoms of the program in
/// first-mention order.
Interpretation perfect_model(const Program& p);

}  // namespace parapri
