// gew -- group equation workbench
//
// Equations and systems over a group: left-hand sides mixing variables and
// coefficients, coefficient elimination by fresh letters, exponent
// matrices, and the reduction to diagonal form
//     x_i^{m_i} u_i(x) = h_i,   u_j(x) = h_j     (u in the derived subgroup)
// through the two word-level elementary moves w_i -> w_i w_j^{+-1} and
// x_i -> x_i x_j^{+-1}, with a replayable substitution log.

#ifndef GEW_EQSYS_HPP
#define GEW_EQSYS_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "gew/groups.hpp"

namespace gew {

struct VarPower {
  std::int32_t var;
  std::int64_t exp;  // never zero
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

// Normalized mixed word: adjacent powers of the same variable are merged,
// adjacent coefficients are multiplied in the group, identity coefficients
// vanish.
class MixedWord {
 public:
  using Item = std::variant<VarPower, Element>;

  MixedWord() = default;

  static MixedWord variable(std::int32_t var, std::int64_t exp = 1);
  static MixedWord coefficient(const Group& G, Element h);
  static MixedWord fromVariableWord(const Word& w);

  const std::vector<Item>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  bool coefficientFree() const;
  std::int32_t maxVariable() const;  // -1 when no variables occur

  void appendVar(std::int32_t var, std::int64_t exp);
  void appendCoeff(const Group& G, const Element& h);
  MixedWord times(const Group& G, const MixedWord& other) const;
  MixedWord inverseWord(const Group& G) const;
  MixedWord powWord(const Group& G, std::int64_t k) const;
  MixedWord conjugatedBy(const Group& G, const MixedWord& s) const;
  MixedWord commutatorWith(const Group& G, const MixedWord& other) const;

  // x_var -> replacement (occurrences of x_var^-1 get the inverse).
  MixedWord substituteVar(const Group& G, std::int32_t var,
                          const MixedWord& replacement) const;

  // Exponent sums of the variables.
  ExponentVector variableExponents() const;

  // The lhs as a word over the variable alphabet; requires coefficientFree.
  Word variableWord() const;

  Element evaluate(const Group& G, std::span<const Element> assignment) const;

  std::string print(const Group& G,
                    std::span<const std::string> varNames) const;

  friend bool operator==(const MixedWord&, const MixedWord&) = delete;
  bool sameAs(const Group& G, const MixedWord& other) const;

 private:
  std::vector<Item> items_;
};

struct Equation {
  MixedWord lhs;
  Element rhs;
};

class EquationSystem {
 public:
  EquationSystem(GroupHandle group, std::vector<std::string> varNames);

  const Group& group() const { return *group_; }
  GroupHandle groupHandle() const { return group_; }
  const std::vector<std::string>& variableNames() const { return varNames_; }
  std::int32_t variableCount() const {
    return static_cast<std::int32_t>(varNames_.size());
  }
  const std::vector<Equation>& equations() const { return eqs_; }

  std::int32_t addVariable(std::string name);
  void addEquation(MixedWord lhs, Element rhs);
  bool coefficientFree() const;

  std::vector<bool> evaluate(std::span<const Element> assignment) const;
  bool satisfied(std::span<const Element> assignment) const;

  std::string print() const;

 private:
  GroupHandle group_;
  std::vector<std::string> varNames_;
  std::vector<Equation> eqs_;
};

// --------------------------------------------------------------- the moves

struct RowMove {
  std::int32_t eq;      // i: w_i -> w_i * w_j^sign, h_i -> h_i * h_j^sign
  std::int32_t other;   // j
  int sign;             // +1 or -1
};
struct VarMove {
  std::int32_t var;     // i: x_i -> x_i * x_j^sign
  std::int32_t other;   // j
  int sign;
};
// x_var -> x_var^-1; the final sign fix that makes multiplicities positive.
struct InvertMove {
  std::int32_t var;
};
using Move = std::variant<RowMove, VarMove, InvertMove>;

struct SubstitutionLog {
  std::vector<Move> moves;
};

struct DiagonalHead {
  std::int32_t var;
  std::int64_t multiplicity;  // > 0
  Word tail;                  // over the variables; all exponent sums zero
  Element rhs;
};
struct DiagonalPure {
  Word tail;  // all exponent sums zero
  Element rhs;
};

struct DiagonalForm {
  GroupHandle group;
  std::vector<std::string> varNames;
  std::vector<DiagonalHead> heads;
  std::vector<DiagonalPure> pures;

  EquationSystem toSystem() const;
};

// ------------------------------------------------------------- operations

// Each distinct coefficient value (up to inversion) becomes a fresh
// variable z with an extra equation z = h; left-hand sides come out
// coefficient-free. Solutions correspond by forgetting / attaching the
// fresh variables.
EquationSystem eliminateCoefficients(const EquationSystem& sys);

// Entry (i, k) is the exponent sum of variable k in w_i. Requires a
// coefficient-free system.
std::vector<std::vector<std::int64_t>> exponentMatrix(
    const EquationSystem& sys);

struct DiagonalReduction {
  DiagonalForm form;
  SubstitutionLog log;
};
DiagonalReduction reduceToDiagonal(const EquationSystem& sys);

// Replays a log on a coefficient-free system; the reduction's own output
// must match this replay exactly.
EquationSystem applyLog(const EquationSystem& sys, const SubstitutionLog& log);

using Assignment = std::vector<Element>;

// A solution of the pre-move system mapped to one of the post-move system,
// and back. forward then back is the identity.
Assignment mapSolutionForward(const Group& G, const SubstitutionLog& log,
                              Assignment a);
Assignment mapSolutionBack(const Group& G, const SubstitutionLog& log,
                           Assignment a);

}  // namespace gew

#endif  // GEW_EQSYS_HPP
