#pragma once

// Reference implementations used only by tests. They walk formulas by hand
// over named assignments and follow the definitions literally, sharing no
// code with the library's compiled evaluators.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "parapri/formula.hpp"
#include "parapri/lp_encoder.hpp"
#include "parapri/theory.hpp"

namespace oracle {

using Assignment = std::map<std::string, bool>;
using Model = std::set<std::string>;  // true atoms

bool truth(const parapri::Formula& f, const Assignment& a);

std::vector<Assignment> assignments(const std::vector<std::string>& atoms);

bool tautology(const parapri::Formula& f);

// Closure of (higher, lower) pairs by Floyd-Warshall over the label count.
std::set<std::pair<std::size_t, std::size_t>> closure(std::size_t n,
                                                      const std::set<std::pair<std::size_t, std::size_t>>& edges);

struct Order {
  std::vector<parapri::Formula> defaults;
  std::set<std::pair<std::size_t, std::size_t>> higher;  // closed
  std::vector<parapri::Formula> fixtures;
};

Order order_of(const parapri::Theory& t);
Order parallel_order(const std::vector<parapri::Formula>& defaults);

// z <= z2 read straight off the definition.
bool leq(const Order& o, const Assignment& z, const Assignment& z2);
bool fix_equal(const Order& o, const Assignment& z, const Assignment& z2);

std::set<Model> preferred(const parapri::Theory& t);
std::set<Model> project(const std::set<Model>& models, const std::vector<std::string>& atoms);

// Stable models by reduct and least model; for a stratified program there is
// exactly one and it is the perfect model.
std::vector<Model> stable_models(const parapri::Program& p);

// Commutative normal form: nested &/| chains flattened and sorted.
std::string ac_normal(const parapri::Formula& f);

}  // namespace oracle
