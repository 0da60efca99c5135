#pragma once

#include <optional>
#include <string>
#include <vector>

#include "focgnn/formula.hpp"

namespace focgnn {

// One conjunct of a guard. forward means pred(outer, bound), otherwise
// pred(bound, outer).
struct GuardLiteral {
  std::string pred;
  bool forward = true;
  bool positive = true;
};

struct GuardedBody {
  std::vector<GuardLiteral> guard;  // empty when the guard is `true`
  Formula rest;                     // free variables within {bound}
};

// Rewrites f into the relation-specified fragment: every quantifier body
// becomes guard & rest, where the guard fixes, for each relation literal
// occurring directly in that body, whether it holds between the two variables.
// f may have at most one free variable.
Formula to_rsfoc2(const Formula& f);

bool is_rsfoc2(const Formula& f);

// Splits a quantifier node whose body is in guarded form; nullopt otherwise.
std::optional<GuardedBody> split_guarded(const Formula& exists);

// Upper bound on threshold splittings produced for a single quantifier.
inline constexpr std::size_t kMaxSplittings = 200000;

}  // namespace focgnn
