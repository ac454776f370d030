#pragma once

// Linear programs bounding the information ratio of an access structure:
// minimize v over polymatroid-like f on the subsets of Q = P + dealer, with
// dealer constraints from the structure, Shannon inequalities and optional
// instantiated rank inequalities. Everything is exact.
//
// Variable 0 is v; variable X (a nonzero bitmask over Q) is f(X). f(empty)
// is the literal 0 and never appears as a variable.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankineq/access_structure.hpp"
#include "rankineq/exact_simplex.hpp"
#include "rankineq/ineq_gen.hpp"
#include "rankineq/rational.hpp"

namespace rankineq {

inline constexpr std::size_t max_lp_ground_size = 12;

enum class Relation { ge, eq };

struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rational>> coeffs;  // variable index -> coefficient
  Relation relation = Relation::ge;
  Rational rhs;
  std::string provenance;
};

struct LpProblem {
  std::vector<std::string> ground;  // Q; bit i of a mask is ground[i]
  std::vector<LinearConstraint> constraints;
  std::string kind = "kappa";
  std::string char_condition = "all";

  std::size_t variable_count() const { return std::size_t{1} << ground.size(); }
  // "v" or "f(a1,b1)".
  std::string variable_name(std::size_t index) const;
};

// f(Q) - f(Q - i) >= 0 for each i, and
// f(X+i) + f(X+j) - f(X+i+j) - f(X) >= 0 for i < j, X inside Q - {i, j}.
// Count n + C(n,2) 2^(n-2). Throws CapExceeded above max_lp_ground_size.
std::vector<LinearConstraint> elemental_shannon(std::size_t n);
// Same constraints with provenance written in the given labels.
std::vector<LinearConstraint> elemental_shannon(const std::vector<std::string>& ground);

// Over Q = participants + dealer (dealer is bit |P|):
// v - f(x) >= 0 per participant; f(X+p) - f(X) = 0 for qualified X and
// = 1 for the others, over every X inside P.
std::vector<LinearConstraint> port_lp_constraints(const AccessStructure& s);

// Ground labels of the structure's LP: participants then dealer.
std::vector<std::string> lp_ground(const AccessStructure& s);

// VariableLabel -> member of Q.
using RoleMap = std::map<VariableLabel, std::string>;

// Every joint-entropy term H(vars) becomes f(union of images). Throws
// UnmappedVariable on a partial map, UnknownParticipant for images outside Q.
LinearConstraint instantiate_rank_inequality(const EntropyInequality& ineq, const RoleMap& role_map,
                                             const std::vector<std::string>& ground);

// A_i -> a_i, B_i -> b_i, C -> the dealer. Throws UnknownParticipant when Q
// lacks one of the images.
RoleMap natural_role_map(const EntropyInequality& ineq, const AccessStructure& s);

// All injective maps from the inequality's variables into Q. The count grows
// factorially; throws CapExceeded beyond `limit` maps.
std::vector<RoleMap> injective_role_maps(const EntropyInequality& ineq, const std::vector<std::string>& ground,
                                         std::size_t limit = 100000);

enum class LpStatus { optimal, infeasible, unbounded };
const char* to_string(LpStatus s);

struct BindingConstraint {
  std::string provenance;
  Rational multiplier;
};

struct LpReport {
  LpStatus status = LpStatus::infeasible;
  Rational optimum;
  std::vector<Rational> primal;  // by variable index, when optimal
  std::vector<BindingConstraint> binding;
  std::string kind;
  std::string char_condition;
  std::size_t pivots = 0;
  std::size_t reduced_rows = 0;     // primal variables left after presolve
  std::size_t reduced_columns = 0;  // inequalities left after presolve
  bool resubstitution_passed = false;
};

// Eliminates the equalities by substitution, solves the dual of what is left
// with the exact simplex and recovers the primal from the simplex
// multipliers. The primal is re-substituted into every original constraint;
// a mismatch throws Error.
LpReport solve_exact_lp(const LpProblem& problem, const SimplexOptions& options = {});

// Checks a primal vector against every constraint; returns the provenance of
// the first violated one.
std::optional<std::string> first_violated_constraint(const LpProblem& problem, const std::vector<Rational>& x);

struct ExtraInequality {
  EntropyInequality ineq;
  RoleMap role_map;
};

LpProblem build_kappa_problem(const AccessStructure& s, const std::vector<ExtraInequality>& extras);

// Port constraints + Shannon + extras, solved. kind is "kappa" without
// extras and "kappa_star" with them.
LpReport kappa_bound(const AccessStructure& s, const std::vector<ExtraInequality>& extras = {},
                     const SimplexOptions& options = {});

}  // namespace rankineq
