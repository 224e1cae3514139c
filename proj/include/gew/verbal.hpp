// gew -- group equation workbench
//
// Verbal subgroup machinery: evaluating laws, sampling the verbal subgroup
// with generation witnesses, the free-product law construction, the
// centralizer hypothesis check, and the structural membership test for
// one-variable words over I(H).

#ifndef GEW_VERBAL_HPP
#define GEW_VERBAL_HPP

#include <optional>
#include <vector>

#include "gew/eqsys.hpp"
#include "gew/groups.hpp"

namespace gew {

// A word in law variables t1..t_r. Nontrivial whenever it is used as a law.
struct LawWord {
  Word word;
  std::int32_t arity;

  LawWord(Word w, std::int32_t r);
};

Element lawEvaluate(const LawWord& I, const Group& G,
                    std::span<const Element> tuple);

// h = product of I(tuple)^{sign} terms; re-evaluating the expression in
// the group must reproduce the element.
struct WitnessTerm {
  int sign;  // +1 or -1
  std::vector<Element> tuple;
};
struct Witness {
  Element element;
  std::vector<WitnessTerm> expression;
};

Element evaluateWitness(const LawWord& I, const Group& G, const Witness& w);
Witness invertWitness(const Group& G, const Witness& w);

// All products of at most `length` law values (and inverse values) over
// tuples from ball(G, U, radius), each carrying its witness expression.
// Ordered by witness length, then ball order; first witness wins.
std::vector<Witness> verbalBall(const Group& G, const LawWord& I,
                                const std::vector<Element>& U, int radius,
                                int length);

// Witness for one target element, if the sampled verbal ball reaches it.
std::optional<Witness> findWitness(const Group& G, const LawWord& I,
                                   const std::vector<Element>& U, int radius,
                                   int length, const Element& target);

// Disjoint variable renaming followed by the left-normed commutator; a law
// of the direct product of groups satisfying the input laws.
LawWord buildFreeProductLaw(std::span<const LawWord> laws);

// gcd of the law's per-variable exponent sums: I(<x>_inf) = <x^d>.
std::int64_t lawCyclicIndex(const LawWord& I);

// A formal word in the symbol x (variable 0) whose coefficient slots hold
// witnessed elements of I(H), one witness per coefficient occurrence.
struct EWordTemplate {
  MixedWord body;
  std::vector<Witness> witnesses;
};

// Membership in I(<x>_inf) * I(H)^{<x>_inf * I(H)}: kill the constant
// slots, reduce, and check that the surviving power of x lies in <x^d>.
// Throws when a constant does not match its witness.
bool eWordMembership(const EWordTemplate& E, const LawWord& I,
                     const Group& G);

struct Cor3Report {
  std::vector<Witness> witnesses;          // one per f, in order
  std::vector<Element> commonCentralizer;  // within the ball
  std::vector<Element> centerInBall;       // elements commuting with all of U
  bool pass = false;
};

// Verifies the centralizer hypothesis C_H(f_1..f_m) = Z(H) on a ball:
// every f must be witnessed in the verbal ball, and the common
// ball-centralizer of the f's must equal the ball's central elements.
Cor3Report checkCorollary3(GroupHandle H, const LawWord& I,
                           const std::vector<Element>& fs,
                           const std::vector<Element>& U, int radius,
                           int witnessLength = 2);

struct Cor4Report {
  LawWord law;
  Witness f1;
  Witness f2;
  bool foundPair = false;
  bool inCartesian = false;
  bool centralizerTrivial = false;
  bool pass = false;
};

// The free-product check: builds the combined law, finds two non-commuting
// witnessed values, and verifies cartesian membership and trivial common
// ball-centralizer. Rejects the syntactic Z2 * Z2 case.
Cor4Report checkCorollary4(const std::vector<GroupHandle>& factors,
                           std::vector<LawWord> laws, int radius);

}  // namespace gew

#endif  // GEW_VERBAL_HPP
