#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "gew/verbal.hpp"
#include "support.hpp"

using namespace gew;
using gewtest::Rng;

namespace {

std::set<std::string> witnessKeys(const Group& G,
                                  const std::vector<Witness>& ws) {
  std::set<std::string> out;
  for (const Witness& w : ws) {
    out.insert(G.key(w.element));
  }
  return out;
}

}  // namespace

TEST_CASE("law evaluation") {
  auto F = makeFree(2, {"b", "c"});
  const LawWord square(Word::generator(0, 2), 1);
  const Element b = Element::word(Word::generator(0));
  CHECK(F->equal(lawEvaluate(square, *F, std::vector<Element>{b}),
                 Element::word(Word::generator(0, 2))));

  // Z2 satisfies t^2
  auto Z2 = makeCyclic(2, "s");
  for (const Element& g : gewtest::allElements(*Z2)) {
    CHECK(Z2->isId(lawEvaluate(square, *Z2, std::vector<Element>{g})));
  }

  // [t1^2, t2^3] vanishes on all of Z2 x Z3
  auto D = makeDirect({makeCyclic(2, "s"), makeCyclic(3, "t")});
  const LawWord mixed(
      commutator(Word::generator(0, 2), Word::generator(1, 3)), 2);
  for (const Element& g1 : gewtest::allElements(*D)) {
    for (const Element& g2 : gewtest::allElements(*D)) {
      CHECK(D->isId(lawEvaluate(mixed, *D, std::vector<Element>{g1, g2})));
    }
  }

  const std::vector<Element> bad = {b, b};
  CHECK_THROWS_AS(lawEvaluate(square, *F, bad), Error);
  CHECK_THROWS_AS(LawWord(Word::generator(3), 2), Error);
}

TEST_CASE("verbal ball for the square law on F2") {
  auto F = makeFree(2, {"b", "c"});
  const LawWord square(Word::generator(0, 2), 1);
  const auto U = symmetrize(
      *F, {Element::word(Word::generator(0)), Element::word(Word::generator(1))});

  const auto vb1 = verbalBall(*F, square, U, 1, 1);
  const auto keys1 = witnessKeys(*F, vb1);
  CHECK(keys1.count(F->key(Element::word(Word::generator(0, 2)))) == 1);
  CHECK(keys1.count(F->key(Element::word(Word::generator(0, -2)))) == 1);
  CHECK(keys1.count(F->key(Element::word(Word::generator(1, 2)))) == 1);
  CHECK(keys1.count(F->key(Element::word(Word::generator(1, -2)))) == 1);
  CHECK(keys1.count(F->key(F->id())) == 1);

  const auto vb2 = verbalBall(*F, square, U, 1, 2);
  const Element b2c2 =
      Element::word(Word::generator(0, 2) * Word::generator(1, 2));
  CHECK(witnessKeys(*F, vb2).count(F->key(b2c2)) == 1);

  // every witness re-evaluates to its element
  for (const Witness& w : vb2) {
    CHECK(F->equal(evaluateWitness(square, *F, w), w.element));
  }

  // b^2 * c^2 carries a length-2 witness
  const auto found = findWitness(*F, square, U, 1, 2, b2c2);
  REQUIRE(found.has_value());
  CHECK(found->expression.size() == 2);
}

TEST_CASE("the trivial law generates everything") {
  auto F = makeFree(2, {"b", "c"});
  const LawWord t(Word::generator(0), 1);
  const auto U = symmetrize(
      *F, {Element::word(Word::generator(0)), Element::word(Word::generator(1))});
  const Ball b = ball(*F, U, 2, false);
  const auto vb = verbalBall(*F, t, U, 2, 1);
  std::set<std::string> ballKeys;
  for (const Element& e : b.elements) {
    ballKeys.insert(F->key(e));
  }
  CHECK(witnessKeys(*F, vb) == ballKeys);
}

TEST_CASE("free-product law construction") {
  const LawWord sq(Word::generator(0, 2), 1);
  const LawWord cube(Word::generator(0, 3), 1);
  const std::vector<LawWord> laws = {sq, cube};
  const LawWord built = buildFreeProductLaw(laws);
  CHECK(built.arity == 2);
  CHECK(built.word ==
        commutator(Word::generator(0, 2), Word::generator(1, 3)));

  // it is a law of Z2 x Z3
  auto D = makeDirect({makeCyclic(2, "s"), makeCyclic(3, "t")});
  for (const Element& g1 : gewtest::allElements(*D)) {
    for (const Element& g2 : gewtest::allElements(*D)) {
      CHECK(D->isId(lawEvaluate(built, *D, std::vector<Element>{g1, g2})));
    }
  }

  const std::vector<LawWord> one = {sq};
  CHECK_THROWS_AS(buildFreeProductLaw(one), Error);

  // arity of the result is the sum of the arities
  const std::vector<LawWord> three = {sq, cube, sq};
  CHECK(buildFreeProductLaw(three).arity == 3);
}

TEST_CASE("law cyclic index") {
  CHECK(lawCyclicIndex(LawWord(Word::generator(0, 2), 1)) == 2);
  CHECK(lawCyclicIndex(LawWord(
            commutator(Word::generator(0), Word::generator(1)), 2)) == 0);
  CHECK(lawCyclicIndex(LawWord(Word::generator(0), 1)) == 1);
  CHECK(lawCyclicIndex(LawWord(
            Word::generator(0, 4) * Word::generator(1, 6), 2)) == 2);
}

TEST_CASE("e-word membership") {
  auto H = gewtest::exampleGroupH();
  const LawWord square(Word::generator(0, 2), 1);

  // x^2 with I = t^2: 2 in <2>
  EWordTemplate x2{MixedWord::variable(0, 2), {}};
  CHECK(eWordMembership(x2, square, *H));

  // [x, (b^2,1)]: the constant is (b,1)^2, projection kills it
  const Element bsq = gewtest::semiElem(Word::generator(0, 2), 0);
  Witness wb{bsq, {{1, {gewtest::semiElem(Word::generator(0), 0)}}}};
  EWordTemplate comm{
      MixedWord::variable(0).commutatorWith(
          *H, MixedWord::coefficient(*H, bsq)),
      {invertWitness(*H, wb), wb}};
  CHECK(eWordMembership(comm, square, *H));

  // x alone: 1 not in <2>
  EWordTemplate x1{MixedWord::variable(0), {}};
  CHECK_FALSE(eWordMembership(x1, square, *H));

  // unwitnessed constant
  EWordTemplate bad{MixedWord::coefficient(*H, bsq), {}};
  CHECK_THROWS_AS(eWordMembership(bad, square, *H), Error);

  // wrong witness
  Witness wrong{bsq, {{1, {gewtest::semiElem(Word::generator(1), 0)}}}};
  EWordTemplate bad2{MixedWord::coefficient(*H, bsq), {wrong}};
  CHECK_THROWS_AS(eWordMembership(bad2, square, *H), Error);
}

TEST_CASE("e-word membership is stable under conjugating constant slots") {
  auto H = gewtest::exampleGroupH();
  const LawWord square(Word::generator(0, 2), 1);
  const Element bsq = gewtest::semiElem(Word::generator(0, 2), 0);
  const Element csq = gewtest::semiElem(Word::generator(1, 2), 0);
  const Witness wb{bsq, {{1, {gewtest::semiElem(Word::generator(0), 0)}}}};
  const Witness wc{csq, {{1, {gewtest::semiElem(Word::generator(1), 0)}}}};

  Rng rng(733);
  for (int trial = 0; trial < 20; ++trial) {
    const std::int64_t e = rng.below(5) - 2;
    // base template x^(2k) * h with h = (b^2,1)
    const std::int64_t k = 2 * (rng.below(3) - 1);
    EWordTemplate base{
        MixedWord::variable(0, k == 0 ? 2 : k)
            .times(*H, MixedWord::coefficient(*H, bsq)),
        {wb}};
    const bool verdict = eWordMembership(base, square, *H);

    // conjugate the constant slot by x^e * (c^2,1): inserts balanced
    // x-powers and new witnessed constants
    MixedWord conj = MixedWord::variable(0, e == 0 ? 1 : e)
                         .times(*H, MixedWord::coefficient(*H, csq));
    MixedWord body = MixedWord::variable(0, k == 0 ? 2 : k)
                         .times(*H, conj.inverseWord(*H))
                         .times(*H, MixedWord::coefficient(*H, bsq))
                         .times(*H, conj);
    EWordTemplate conjugated{body, {invertWitness(*H, wc), wb, wc}};
    CHECK(eWordMembership(conjugated, square, *H) == verdict);
  }
}

TEST_CASE("corollary-3 style centralizer check on F2") {
  auto F = makeFree(2, {"b", "c"});
  const LawWord t(Word::generator(0), 1);
  const auto U = symmetrize(
      *F, {Element::word(Word::generator(0)), Element::word(Word::generator(1))});

  const std::vector<Element> good = {
      Element::word(Word::generator(0, 2)),
      Element::word(Word::generator(1, 2))};
  const Cor3Report r = checkCorollary3(F, t, good, U, 2);
  CHECK(r.pass);
  CHECK(r.commonCentralizer.size() == 1);  // just the identity
  CHECK(r.centerInBall.size() == 1);

  // a single element has a cyclic (nontrivial) centralizer
  const std::vector<Element> lone = {Element::word(Word::generator(0))};
  const Cor3Report r2 = checkCorollary3(F, t, lone, U, 2);
  CHECK_FALSE(r2.pass);
  CHECK(r2.commonCentralizer.size() == 5);  // 1, b, b^-1, b^2, b^-2

  // abelian groups pass with any witnessed elements
  auto Z6 = makeCyclic(6, "h");
  const Cor3Report r3 = checkCorollary3(
      Z6, t, {Element::residue(2)},
      symmetrize(*Z6, {Element::residue(1)}), 3);
  CHECK(r3.pass);
  CHECK(r3.commonCentralizer.size() == r3.centerInBall.size());

  // unwitnessed f
  const LawWord square(Word::generator(0, 2), 1);
  CHECK_THROWS_AS(
      checkCorollary3(F, square, {Element::word(Word::generator(0))}, U, 2),
      Error);
}

TEST_CASE("corollary-4 style free-product check") {
  const Cor4Report r =
      checkCorollary4({makeCyclic(2, "s"), makeCyclic(3, "t")}, {}, 4);
  CHECK(r.pass);
  CHECK(r.foundPair);
  CHECK(r.inCartesian);
  CHECK(r.centralizerTrivial);
  CHECK(r.law.arity == 2);

  CHECK_THROWS_AS(checkCorollary4({makeCyclic(2), makeCyclic(2)}, {}, 4),
                  Error);

  const Cor4Report r3 = checkCorollary4(
      {makeCyclic(2, "s1"), makeCyclic(2, "s2"), makeCyclic(2, "s3")}, {}, 4);
  CHECK(r3.pass);
}

TEST_CASE("verbal ball values project to the identity under the natural "
          "map") {
  auto Hh = makeFreeProduct({makeCyclic(2, "s"), makeCyclic(3, "t")});
  const auto* H = dynamic_cast<const FreeProductGroup*>(Hh.get());
  const LawWord sq(Word::generator(0, 2), 1);
  const LawWord cube(Word::generator(0, 3), 1);
  const std::vector<LawWord> laws = {sq, cube};
  const LawWord IA = buildFreeProductLaw(laws);
  std::vector<Element> U;
  for (const auto& [name, g] : H->generators()) {
    U.push_back(g);
  }
  U = symmetrize(*H, U);
  const auto* D = dynamic_cast<const DirectProduct*>(H->directHandle().get());
  for (const Witness& w : verbalBall(*H, IA, U, 3, 1)) {
    CHECK(D->isId(H->projectToDirect(w.element)));
    CHECK(H->equal(evaluateWitness(IA, *H, w), w.element));
  }
}
