// gew -- group equation workbench
//
// A uniform group-computation contract plus the concrete groups the
// workbench's examples live in: free groups, finite cyclic groups, direct
// products, semidirect products F_r x| Z_n with a generator-defined action,
// free products with syllable normal forms, rational vector groups and
// orientable surface groups with a Dehn-algorithm word problem.

#ifndef GEW_GROUPS_HPP
#define GEW_GROUPS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "gew/freewords.hpp"

namespace gew {

// Exact rational arithmetic for the divisible Q factors. Desk-scale values,
// no overflow handling beyond normalization.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool zero() const { return num_ == 0; }

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  Rational scaled(std::int64_t k) const { return Rational(num_ * k, den_); }
  // Exact division; this is the m-th root in the additive group.
  Rational dividedBy(std::int64_t m) const { return Rational(num_, den_ * m); }

  friend bool operator==(const Rational&, const Rational&) = default;
  std::string str() const;

 private:
  std::int64_t num_;
  std::int64_t den_;  // > 0
};

class Element;

struct SemiPair {
  Word word;
  std::int64_t residue = 0;
  friend bool operator==(const SemiPair&, const SemiPair&) = default;
};

// Free-product factors are free or finite cyclic, so a syllable payload
// never recurses.
struct FPSyllable {
  std::int32_t factor = 0;
  std::variant<Word, std::int64_t> value;
  friend bool operator==(const FPSyllable&, const FPSyllable&) = default;
};

// Group-tagged payload. Interpretation belongs to the owning Group; the
// permutation alternative is for table-style groups defined outside the
// library (test oracles).
class Element {
 public:
  Element() = default;

  static Element word(Word w);
  static Element residue(std::int64_t r);
  static Element tuple(std::vector<Element> parts);
  static Element semi(Word w, std::int64_t r);
  static Element syllables(std::vector<FPSyllable> syls);
  static Element rationals(std::vector<Rational> coords);
  static Element permutation(std::vector<std::int32_t> images);

  bool empty() const { return v_.index() == 0; }

  const Word& asWord() const;
  std::int64_t asResidue() const;
  const std::vector<Element>& asTuple() const;
  const SemiPair& asSemi() const;
  const std::vector<FPSyllable>& asSyllables() const;
  const std::vector<Rational>& asRationals() const;
  const std::vector<std::int32_t>& asPermutation() const;

 private:
  std::variant<std::monostate, Word, std::int64_t, std::vector<Element>,
               SemiPair, std::vector<FPSyllable>, std::vector<Rational>,
               std::vector<std::int32_t>>
      v_;
};

// The computation contract. All operations are pure; handles and elements
// are immutable and freely shareable across threads.
class Group {
 public:
  virtual ~Group() = default;

  virtual std::string describe() const = 0;
  virtual Element id() const = 0;
  virtual Element mul(const Element& x, const Element& y) const = 0;
  virtual Element inv(const Element& x) const = 0;
  virtual bool equal(const Element& x, const Element& y) const = 0;
  // Deterministic serialization. Canonical (equal iff same key) for every
  // kind except surface groups, which answer canonicalKeys() == false.
  virtual std::string key(const Element& x) const = 0;
  virtual bool canonicalKeys() const { return true; }
  // Conjugation-free class invariant used to bucket candidates when keys
  // are not canonical.
  virtual std::string invariantKey(const Element& x) const { return key(x); }
  virtual std::string print(const Element& x) const = 0;
  virtual void checkElement(const Element& x) const = 0;
  virtual bool abelian() const = 0;
  virtual std::optional<std::uint64_t> order() const { return std::nullopt; }
  // Named standard generators, in declaration order, without inverses.
  virtual std::vector<std::pair<std::string, Element>> generators() const = 0;
  // Order of x, or nullopt when infinite or above cap.
  virtual std::optional<std::int64_t> elementOrder(const Element& x,
                                                   std::int64_t cap) const;

  bool isId(const Element& x) const { return equal(x, id()); }
  Element power(const Element& x, std::int64_t k) const;
  Element commutatorOf(const Element& x, const Element& y) const;
  Element conjugateOf(const Element& x, const Element& s) const;
};

using GroupHandle = std::shared_ptr<const Group>;

class FreeGroup : public Group {
 public:
  FreeGroup(std::int32_t rank, std::vector<std::string> names = {});

  std::int32_t rank() const { return rank_; }
  const std::vector<std::string>& names() const { return names_; }

  std::string describe() const override;
  Element id() const override { return Element::word(Word()); }
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override { return rank_ <= 1; }
  std::optional<std::uint64_t> order() const override;
  std::vector<std::pair<std::string, Element>> generators() const override;
  std::optional<std::int64_t> elementOrder(const Element& x,
                                           std::int64_t cap) const override;

 private:
  std::int32_t rank_;
  std::vector<std::string> names_;
};

class CyclicGroup : public Group {
 public:
  explicit CyclicGroup(std::int64_t n, std::string name = "a");

  std::int64_t modulus() const { return n_; }
  const std::string& name() const { return name_; }

  std::string describe() const override;
  Element id() const override { return Element::residue(0); }
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override { return true; }
  std::optional<std::uint64_t> order() const override {
    return static_cast<std::uint64_t>(n_);
  }
  std::vector<std::pair<std::string, Element>> generators() const override;
  std::optional<std::int64_t> elementOrder(const Element& x,
                                           std::int64_t cap) const override;

 private:
  std::int64_t n_;
  std::string name_;
};

class DirectProduct : public Group {
 public:
  explicit DirectProduct(std::vector<GroupHandle> factors);

  const std::vector<GroupHandle>& factors() const { return factors_; }

  std::string describe() const override;
  Element id() const override;
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  bool canonicalKeys() const override;
  std::string invariantKey(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override;
  std::optional<std::uint64_t> order() const override;
  std::vector<std::pair<std::string, Element>> generators() const override;

 private:
  std::vector<GroupHandle> factors_;
};

// F_rank x| <a>_n. The action images define an automorphism of the free
// part whose n-th power is the identity (verified on construction). The
// multiplication convention is
//   (w1, a^e1) * (w2, a^e2) = (w1 * action^e1(w2), a^(e1+e2)).
class SemidirectProduct : public Group {
 public:
  SemidirectProduct(std::int32_t freeRank, std::vector<std::string> freeNames,
                    std::int64_t actingOrder, std::string actingName,
                    std::vector<Word> actionImages);

  std::int32_t freeRank() const { return freeRank_; }
  std::int64_t actingOrder() const { return order_; }
  const std::vector<std::string>& freeNames() const { return freeNames_; }
  // action^k applied to a word of the free part
  Word actionPow(std::int64_t k, const Word& w) const;

  std::string describe() const override;
  Element id() const override { return Element::semi(Word(), 0); }
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override;
  std::vector<std::pair<std::string, Element>> generators() const override;
  std::optional<std::int64_t> elementOrder(const Element& x,
                                           std::int64_t cap) const override;

 private:
  std::int32_t freeRank_;
  std::vector<std::string> freeNames_;
  std::int64_t order_;
  std::string actingName_;
  // images[k][g] = action^k(g), k in [0, order)
  std::vector<std::vector<Word>> images_;
};

// Free product of free and finite cyclic factors, with the alternating
// syllable normal form. Equality is structural, so keys are canonical.
class FreeProductGroup : public Group {
 public:
  explicit FreeProductGroup(std::vector<GroupHandle> factors);

  const std::vector<GroupHandle>& factors() const { return factors_; }
  GroupHandle directHandle() const { return direct_; }
  // Image under the natural map onto the direct product of the factors;
  // the kernel is the cartesian subgroup.
  Element projectToDirect(const Element& x) const;

  std::string describe() const override;
  Element id() const override { return Element::syllables({}); }
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override { return false; }
  std::vector<std::pair<std::string, Element>> generators() const override;

  // Builds the normal form from an arbitrary syllable sequence.
  Element fromSyllables(const std::vector<FPSyllable>& raw) const;

 private:
  std::vector<GroupHandle> factors_;
  GroupHandle direct_;

  bool syllableTrivial(const FPSyllable& s) const;
  FPSyllable syllableMul(const FPSyllable& a, const FPSyllable& b) const;
  FPSyllable syllableInv(const FPSyllable& s) const;
};

// (Q^dim, +) with exact arithmetic; the divisible central factor used by
// the m-th root correction. Ball enumeration is rejected for radius >= 1
// with any non-identity generator.
class RationalVectorGroup : public Group {
 public:
  explicit RationalVectorGroup(std::int32_t dim);

  std::int32_t dim() const { return dim_; }

  std::string describe() const override;
  Element id() const override;
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override { return true; }
  std::vector<std::pair<std::string, Element>> generators() const override;
  std::optional<std::int64_t> elementOrder(const Element& x,
                                           std::int64_t cap) const override;

 private:
  std::int32_t dim_;
};

// Fundamental group of the closed orientable surface of genus >= 2 with
// the single relator [x1,y1]...[xg,yg]. Elements are Dehn-irreducible
// representatives; representatives are not unique, so equality goes
// through the Dehn triviality test and keys are not canonical.
class SurfaceGroup : public Group {
 public:
  SurfaceGroup(bool orientable, std::int32_t genus);

  std::int32_t genus() const { return genus_; }
  std::int32_t generatorCount() const { return 2 * genus_; }
  Word relator() const { return relator_; }
  const std::vector<std::string>& names() const { return names_; }

  // Dehn-irreducible representative of the same group element.
  Word dehnReduceWord(Word w) const;
  bool trivialWord(Word w) const;

  std::string describe() const override;
  Element id() const override { return Element::word(Word()); }
  Element mul(const Element& x, const Element& y) const override;
  Element inv(const Element& x) const override;
  bool equal(const Element& x, const Element& y) const override;
  std::string key(const Element& x) const override;
  bool canonicalKeys() const override { return false; }
  std::string invariantKey(const Element& x) const override;
  std::string print(const Element& x) const override;
  void checkElement(const Element& x) const override;
  bool abelian() const override { return false; }
  std::vector<std::pair<std::string, Element>> generators() const override;
  std::optional<std::int64_t> elementOrder(const Element& x,
                                           std::int64_t cap) const override;

 private:
  std::int32_t genus_;
  std::vector<std::string> names_;
  Word relator_;
  // All cyclic permutations of the relator and of its inverse, as letter
  // sequences; the Dehn replacement table.
  std::vector<std::vector<Letter>> variants_;
  std::int64_t half_;  // replace matches of length > half_

  bool findReplacement(std::vector<Letter>& w, bool cyclic) const;
};

GroupHandle makeFree(std::int32_t rank, std::vector<std::string> names = {});
GroupHandle makeCyclic(std::int64_t n, std::string name = "a");
GroupHandle makeDirect(std::vector<GroupHandle> factors);
GroupHandle makeSemidirect(std::int32_t freeRank,
                           std::vector<std::string> freeNames,
                           std::int64_t actingOrder, std::string actingName,
                           std::vector<Word> actionImages);
GroupHandle makeFreeProduct(std::vector<GroupHandle> factors);
GroupHandle makeRationalVector(std::int32_t dim);
GroupHandle makeSurface(bool orientable, std::int32_t genus);

// Cayley ball of radius `radius` over the exact generating list U (callers
// pass inverses explicitly when they want symmetric balls). Elements are
// deduplicated by the group's equality and returned layer by layer, each
// layer sorted by key. `exhaustive` is set when the ball closed under U,
// i.e. it is the whole generated subgroup.
struct Ball {
  std::vector<Element> elements;
  std::vector<int> depths;
  bool exhaustive = false;
};
Ball ball(const Group& G, const std::vector<Element>& U, int radius,
          bool probeExhaustive = true);

// U extended with inverses, deduplicated.
std::vector<Element> symmetrize(const Group& G, std::vector<Element> U);

// Set-of-elements helper that works for groups with and without canonical
// keys (hash on keys when canonical, bucketed equality scan otherwise).
class ElementDedup {
 public:
  explicit ElementDedup(const Group& G) : G_(G), canon_(G.canonicalKeys()) {}

  // true when the element was not seen before
  bool insert(const Element& x);

 private:
  const Group& G_;
  bool canon_;
  std::unordered_set<std::string> keys_;
  std::unordered_map<std::string, std::vector<Element>> buckets_;
};

// Bounded search for a common root: u, k1, k2 with u^k1 = g1, u^k2 = g2.
// A sampling check for commuting pairs, not a decision procedure.
struct CommonRoot {
  Element root;
  std::int64_t k1 = 0;
  std::int64_t k2 = 0;
};
std::optional<CommonRoot> surfaceCommuteCyclic(const SurfaceGroup& G,
                                               const Element& g1,
                                               const Element& g2,
                                               int searchRadius = 0);

}  // namespace gew

#endif  // GEW_GROUPS_HPP
