// gew -- group equation workbench
//
// Freely reduced words over an indexed generator alphabet. This is the
// computational substrate for free groups, relators, laws and the
// variable-only sides of equation systems.

#ifndef GEW_FREEWORDS_HPP
#define GEW_FREEWORDS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gew {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One maximal run of a single generator, exponent never zero.
struct Syllable {
  std::int32_t gen;
  std::int64_t exp;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// A letter is a generator with a sign.
struct Letter {
  std::int32_t gen;
  int sign;  // +1 or -1
  friend bool operator==(const Letter&, const Letter&) = default;
};

// Per-generator exponent sums; zero entries are never stored, so an empty
// map is exactly the derived-subgroup condition.
using ExponentVector = std::map<std::int32_t, std::int64_t>;

// A freely reduced word, stored run-length compressed: adjacent syllables
// always have distinct generators. Large powers such as b^4000 stay cheap.
// Immutable after construction; all operations return new values.
class Word {
 public:
  Word() = default;

  static Word generator(std::int32_t gen, std::int64_t exp = 1);
  // Reduces an arbitrary raw sequence; this is the canonical form map.
  static Word fromLetters(std::span<const Letter> letters);
  static Word fromSyllables(std::span<const Syllable> syllables);

  bool trivial() const { return syls_.empty(); }
  // Letter count of the reduced form.
  std::int64_t length() const;
  const std::vector<Syllable>& syllables() const { return syls_; }
  // Expanded letter sequence. Linear in length(); only call on short words.
  std::vector<Letter> letters() const;
  std::int32_t maxGenerator() const;  // -1 for the empty word

  Word inverse() const;
  Word pow(std::int64_t k) const;

  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;

  // Shortlex: length first, then letterwise with g < g^-1 < h < h^-1 ...
  // Computed on the run-length form without expansion.
  friend bool shortlexLess(const Word& u, const Word& v);

 private:
  std::vector<Syllable> syls_;

  void appendReduced(std::int32_t gen, std::int64_t exp);
};

Word conjugate(const Word& u, const Word& s);  // s^-1 * u * s
Word commutator(const Word& u, const Word& v);  // u^-1 * v^-1 * u * v
// Left-normed [w1,...,wn] = [[...[w1,w2],...],wn]; needs >= 2 entries.
Word leftNormedCommutator(std::span<const Word> ws);

Word substitute(const Word& w, const std::function<Word(std::int32_t)>& image);

ExponentVector exponentVector(const Word& w);
bool isInDerived(const Word& w);
ExponentVector addExponents(const ExponentVector& a, const ExponentVector& b);

// w = prefix * core * prefix^-1 with core cyclically reduced.
struct CyclicForm {
  Word core;
  Word prefix;
};
CyclicForm cyclicReduce(const Word& w);

// Least rotation among all cyclic rotations of the cyclic core and of its
// inverse; a canonical conjugacy-class representative.
Word cyclicNormalForm(const Word& w);

struct Root {
  Word root;
  std::int64_t exponent;  // maximal k with root^k == w
};
// Maximal root of a nontrivial word: cyclically reduce, then test each
// divisor of the cyclic length. Exact, no heuristics.
Root primitiveRoot(const Word& w);

// All freely reduced words of length <= radius over generators 0..rank-1,
// in shortlex order.
std::vector<Word> freeBall(std::int32_t rank, int radius);

// Words of length <= radius commuting with w. Free-group centralizers are
// cyclic, so this must coincide with the short powers of primitiveRoot(w).
// rank <= 0 means: infer from w, but at least 2.
std::vector<Word> ballCentralizer(const Word& w, int radius,
                                  std::int32_t rank = 0);

// Conjugacy in the ambient free group, decided via cyclic normal forms.
bool conjugateInFree(const Word& u, const Word& v);
// Some s with s^-1 * u * s == v, if one exists.
std::optional<Word> conjugatorInFree(const Word& u, const Word& v);

// All k in [-bound, bound] with r^-k * p * r^k == q, plus a flag for the
// degenerate case where p commutes with r and every k works.
struct ConjugationPowerSolutions {
  bool allOf = false;          // p^(r^k) == q for every k
  std::vector<std::int64_t> ks;
};
ConjugationPowerSolutions solveConjugationPower(const Word& p, const Word& r,
                                                const Word& q);

// Print as b^-1*c^-2*b*c^2. Generators beyond the name list print as g<i>.
std::string printWord(const Word& w, std::span<const std::string> names = {});
std::ostream& operator<<(std::ostream& os, const Word& w);

}  // namespace gew

#endif  // GEW_FREEWORDS_HPP
