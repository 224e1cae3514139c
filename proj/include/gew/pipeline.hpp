// gew -- group equation workbench
//
// Symbolic transformers for the proof constructions: the finite-order
// decomposition equation, the S -> S1 -> S2 rewriting with one-variable
// templates, the divisible-factor correction, the constant-to-law-value
// rewriting with its Lee collapse, and the Lee-word property checker.

#ifndef GEW_PIPELINE_HPP
#define GEW_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gew/eqsys.hpp"
#include "gew/groups.hpp"
#include "gew/solver.hpp"
#include "gew/verbal.hpp"

namespace gew {

// ------------------------------------------------- the observation builder

struct ObservationResult {
  std::int64_t p = 0;  // least exponent >= 2 coprime to all factor orders
  EquationSystem system;  // x1^p * ... * xm^p = f
  Assignment assignment;  // x_i = s_i^{m_i}, verified before return
};

// For f = s_1 ... s_m with every s_i of finite order, builds the equation
// x_1^p ... x_m^p = f together with its explicit solution.
ObservationResult observationEquation(GroupHandle G, const Element& f,
                                      const std::vector<Element>& decomposition);

// ------------------------------------------------------- main theorem S^1

// Decomposes every right-hand side into a geodesic product over U (BFS in
// the Cayley graph) and rewrites each equation w = h as
//   w * y_t^-1 ... y_1^-1 = u_0,  y_1 = u_1, ..., y_t = u_t.
// Right-hand sides of the result lie in U.
EquationSystem buildMainS1(const EquationSystem& S,
                           const std::vector<Element>& U, int radius);

// Geodesic decomposition of a single element over U; the identity gets the
// two-factor decomposition u * u^-1.
std::vector<Element> decomposeOverU(const Group& G,
                                    const std::vector<Element>& U, int radius,
                                    const Element& target);

// ------------------------------------------------------- main theorem S^2

// Per-generator template table; lookups match by group equality.
struct EWordTable {
  std::vector<std::pair<Element, std::vector<EWordTemplate>>> entries;

  const std::vector<EWordTemplate>* find(const Group& G,
                                         const Element& u) const;
};

// Replaces each equation w = u of S1 by the instantiations
// E_{u,k}(w) = E_{u,k}(u) of u's validated templates.
EquationSystem buildMainS2(const EquationSystem& S1, const EWordTable& ewords,
                           const LawWord& law);

// ----------------------------------------------------------- Q correction

// For heads x^m u(x) = h satisfied up to a central divisible residue q,
// replaces x by r^-1 x with r^m = q (exact rational arithmetic). Residues
// are elements of the rational factor, heads first, then pures; a
// nontrivial pure residue violates the central-factor hypothesis and
// throws. The corrected assignment satisfies the form exactly (verified).
Assignment qCorrect(const DiagonalForm& form, const Assignment& found,
                    const std::vector<Element>& residues);

// ------------------------------------------------------------ lemma S -> S1

struct SmLConfig {
  LawWord law;
  // Witnesses offered for the constants; anything missing is searched for
  // in verbalBall(U, radius, witnessLength) when U is nonempty.
  std::vector<Witness> constantWitnesses;
  // Optional explicit augmentation pair making the witnessed set
  // non-cyclic.
  std::vector<Witness> augmentation;
  std::vector<Element> U;
  int radius = 2;
  int witnessLength = 1;

  explicit SmLConfig(LawWord l) : law(std::move(l)) {}
};

struct SmLResult {
  EquationSystem system;  // lhs constant-free, added equations t(y) = h
  // per added equation: the witness whose tuples solve it
  std::vector<Witness> witnesses;
  // the y-variable ids of each added equation, term by term
  std::vector<std::vector<std::int32_t>> yVariables;
};

// Rewrites every lhs constant (an element of I(H), witnessed) as a law
// word in fresh y variables and appends the defining equations t(y) = h.
// The witness set is augmented to generate a non-cyclic subgroup.
SmLResult buildSmLS1(const EquationSystem& S, const SmLConfig& config);

// ------------------------------------------------------------ Lee machinery

struct LeeCandidate {
  Word word;           // over variables z1..z_m (generators 0..m-1)
  std::int32_t arity;  // m
};

// Collapses {u_a = f_a} to the single equation L(u_1..u_N) = L(f_1..f_N).
Equation leeCollapse(const EquationSystem& S1, const LeeCandidate& L);

struct LeeL1Counterexample {
  std::vector<Word> tupleA;
  std::vector<Word> tupleB;
  Word value;  // the common nontrivial value
  int conjugatorBallRadius;  // exhaustively rejected up to this radius
};

struct LeeReport {
  std::vector<LeeL1Counterexample> l1Counterexamples;
  std::vector<std::vector<Word>> l2Violations;
  int searchedRadius = 0;
};

// Enumerates arity-tuples over the radius ball of F2 and tests the two
// defining properties. Counterexamples re-verify by direct evaluation and
// by exhaustive bounded conjugator rejection on top of the exact
// root-coset criterion.
LeeReport checkLeeProperties(const LeeCandidate& L, int radius);

// The exact simultaneous-conjugacy test in a free group: the conjugator
// must carry the first nontrivial coordinate, so it ranges over the
// centralizer coset of one particular conjugator.
std::optional<Word> simultaneousConjugator(std::span<const Word> a,
                                           std::span<const Word> b);

// ------------------------------------------------------------- round trip

struct RoundTripStage {
  std::string name;
  std::string detail;
  bool ok = false;
};

struct RoundTripConfig {
  std::vector<Element> U;
  EWordTable ewords;
  LawWord law;
  int radius = 3;

  explicit RoundTripConfig(LawWord l) : law(std::move(l)) {}
};

struct RoundTripReport {
  std::vector<RoundTripStage> stages;
  std::optional<Assignment> solution;  // of the original system
  bool success = false;
};

// reduceToDiagonal -> buildMainS1 -> buildMainS2 -> solveBounded ->
// qCorrect -> map back; the final assignment satisfies the input system
// exactly. Each stage reports what it certifies.
RoundTripReport runMainTheoremRoundTrip(const EquationSystem& S,
                                        const RoundTripConfig& config);

// Thread cap honored by the tuple scans (GEW_THREADS, default: hardware).
int maxThreads();

}  // namespace gew

#endif  // GEW_PIPELINE_HPP
