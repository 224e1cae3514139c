// gew -- group equation workbench
//
// Bounded brute-force solving over Cayley balls: the oracle that turns
// existence and uniqueness claims into checkable desk-scale statements.

#ifndef GEW_SOLVER_HPP
#define GEW_SOLVER_HPP

#include <optional>
#include <vector>

#include "gew/eqsys.hpp"
#include "gew/groups.hpp"

namespace gew {

struct SearchReport {
  // Every assignment satisfies all equations; ordered by total generator
  // length, then lexicographically in ball order.
  std::vector<Assignment> solutions;
  int searchRadius = 0;
  // The ball covered the whole group, so the report is the full solution
  // set.
  bool exhaustive = false;
};

// All assignments with components in ball(G, U, radius) satisfying the
// system. Early rejection after each equation whose variables are bound.
SearchReport solveBounded(const EquationSystem& sys,
                          const std::vector<Element>& U, int radius);

// True iff solveBounded finds at least one solution and every solution
// agrees with `expected` -- exactly when the group has no designated Q
// factor, and modulo Q (projections agree) when it does.
bool uniqueInBall(const EquationSystem& sys, const std::vector<Element>& U,
                  int radius, const Assignment& expected);

// The designated divisible factor: a direct product whose last factor is a
// rational vector group.
bool hasDesignatedQ(const Group& G);
// Group of the projection away from Q (single factor unwrapped).
GroupHandle qQuotientHandle(const Group& G);
Element quotientByQ(const Group& G, const Element& x);
// The rational factor itself.
GroupHandle qFactorHandle(const Group& G);
Element qComponent(const Group& G, const Element& x);
// Rebuilds a full element from a quotient part and a Q part.
Element withQComponent(const Group& G, const Element& kPart,
                       const Element& qPart);

// The abelian-case construction: per-head single-variable solutions with
// the identity elsewhere. Requires an abelian group, finite enumeration
// over U, and identity right-hand sides on all pure equations; returns
// nothing when a head equation x^m = h has no solution.
std::optional<Assignment> solveDiagonalAbelian(const DiagonalForm& form,
                                               const std::vector<Element>& U);

}  // namespace gew

#endif  // GEW_SOLVER_HPP
