#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "gew/freewords.hpp"

using namespace gew;

namespace {

const std::int32_t B = 0;
const std::int32_t C = 1;

Word b(std::int64_t e = 1) { return Word::generator(B, e); }
Word c(std::int64_t e = 1) { return Word::generator(C, e); }

// Deterministic word sampler, independent of the library's reduction code
// beyond construction from letters.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed * 2654435761u + 1) {}
  std::uint64_t next() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  }
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
  }
};

Word randomWord(Rng& rng, std::int32_t rank, int maxLen) {
  std::vector<Letter> ls;
  const int len = static_cast<int>(rng.below(maxLen + 1));
  for (int i = 0; i < len; ++i) {
    ls.push_back({static_cast<std::int32_t>(rng.below(rank)),
                  rng.below(2) == 0 ? 1 : -1});
  }
  return Word::fromLetters(ls);
}

std::set<std::string> keys(const std::vector<Word>& ws) {
  std::set<std::string> out;
  for (const auto& w : ws) {
    out.insert(printWord(w));
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction is canonical") {
  // b * b^-1 * c -> c
  const Word w = Word::fromLetters(
      std::vector<Letter>{{B, 1}, {B, -1}, {C, 1}});
  CHECK(w == c());

  // empty -> identity
  CHECK(Word::fromLetters({}).trivial());

  // b * c * c^-1 * b -> b^2
  const Word u = Word::fromLetters(
      std::vector<Letter>{{B, 1}, {C, 1}, {C, -1}, {B, 1}});
  CHECK(u == b(2));
}

TEST_CASE("reduce is idempotent on sampled words") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Word w = randomWord(rng, 3, 12);
    CHECK(Word::fromLetters(w.letters()) == w);
  }
}

TEST_CASE("multiply, invert, conjugate") {
  CHECK((b() * b(-1)).trivial());
  CHECK((b() * c()).inverse() == c(-1) * b(-1));
  CHECK(conjugate(b(), c()) == c(-1) * b() * c());
}

TEST_CASE("group axioms on sampled short words") {
  Rng rng(11);
  for (int i = 0; i < 120; ++i) {
    const Word u = randomWord(rng, 2, 6);
    const Word v = randomWord(rng, 2, 6);
    const Word w = randomWord(rng, 2, 6);
    CHECK((u * v) * w == u * (v * w));
    CHECK(u * Word() == u);
    CHECK(Word() * u == u);
    CHECK((u * u.inverse()).trivial());
    CHECK(conjugate(u * v, w) == conjugate(u, w) * conjugate(v, w));
  }
}

TEST_CASE("commutator identities") {
  CHECK(commutator(b(), c(2)) == b(-1) * c(-2) * b() * c(2));
  CHECK(commutator(b(), b(3)).trivial());
  // [a, ab] reduces to [a, b]; seed for the L1 counterexample.
  const Word a = Word::generator(0);
  const Word bb = Word::generator(1);
  CHECK(commutator(a, a * bb) == commutator(a, bb));
}

TEST_CASE("left-normed commutator") {
  const std::vector<Word> uv = {b(), c()};
  CHECK(leftNormedCommutator(uv) == commutator(b(), c()));
  const std::vector<Word> bcb = {b(), c(), b()};
  CHECK(leftNormedCommutator(bcb) == commutator(commutator(b(), c()), b()));
  const std::vector<Word> bbc = {b(), b(), c()};
  CHECK(leftNormedCommutator(bbc).trivial());
  const std::vector<Word> single = {b()};
  CHECK_THROWS_AS(leftNormedCommutator(single), Error);
}

TEST_CASE("exponent vectors") {
  CHECK(exponentVector(commutator(b(), c())).empty());
  CHECK(isInDerived(commutator(b(), c())));

  const ExponentVector evb2 = {{B, 2}};
  CHECK(exponentVector(b(2)) == evb2);
  CHECK_FALSE(isInDerived(b(2)));

  const Word w = b() * c() * b(-1) * c();
  const ExponentVector evc2 = {{C, 2}};
  CHECK(exponentVector(w) == evc2);
  CHECK_FALSE(isInDerived(w));
}

TEST_CASE("exponent vector is a homomorphism") {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const Word u = randomWord(rng, 3, 8);
    const Word v = randomWord(rng, 3, 8);
    CHECK(exponentVector(u * v) ==
          addExponents(exponentVector(u), exponentVector(v)));
  }
}

TEST_CASE("cyclic reduction") {
  const Word w = b() * c(2) * b(-1);
  const CyclicForm cf = cyclicReduce(w);
  CHECK(cf.core == c(2));
  CHECK(cf.prefix * cf.core * cf.prefix.inverse() == w);
  CHECK(cyclicReduce(b(4)).core == b(4));
  CHECK(cyclicReduce(Word()).core.trivial());
}

TEST_CASE("primitive roots") {
  CHECK(primitiveRoot(b(4)).root == b());
  CHECK(primitiveRoot(b(4)).exponent == 4);

  const Root r1 = primitiveRoot(b() * c());
  CHECK(r1.root == b() * c());
  CHECK(r1.exponent == 1);

  // (b c b^-1)^2 = b c^2 b^-1
  const Root r2 = primitiveRoot(b() * c(2) * b(-1));
  CHECK(r2.root == b() * c() * b(-1));
  CHECK(r2.exponent == 2);

  CHECK_THROWS_AS(primitiveRoot(Word()), Error);
}

TEST_CASE("primitive root soundness on sampled words") {
  Rng rng(31);
  for (int i = 0; i < 150; ++i) {
    const Word w = randomWord(rng, 2, 10);
    if (w.trivial()) {
      continue;
    }
    const Root r = primitiveRoot(w);
    CHECK(r.root.pow(r.exponent) == w);
    const Root rr = primitiveRoot(r.root);
    CHECK(rr.root == r.root);
    CHECK(rr.exponent == 1);
  }
}

TEST_CASE("free ball sizes") {
  CHECK(freeBall(2, 0).size() == 1);
  CHECK(freeBall(2, 1).size() == 5);
  CHECK(freeBall(2, 2).size() == 17);   // 1 + 4 + 12
  CHECK(freeBall(2, 3).size() == 53);   // + 36
  CHECK(freeBall(1, 3).size() == 7);
}

TEST_CASE("ball centralizers equal short root powers") {
  const auto got = keys(ballCentralizer(b(), 2));
  const std::set<std::string> want = {"1", "b^-2", "b^-1", "b", "b^2"};
  std::set<std::string> gotNamed;
  for (const auto& k : got) {
    gotNamed.insert(k == "g0" ? "b" : k == "g0^2" ? "b^2"
                    : k == "g0^-1" ? "b^-1" : k == "g0^-2" ? "b^-2" : k);
  }
  CHECK(gotNamed == want);

  CHECK(ballCentralizer(commutator(b(), c()), 1).size() == 1);
  CHECK(ballCentralizer(b(2), 1).size() == 3);  // 1, b, b^-1
}

TEST_CASE("ball centralizer matches primitive root prediction on samples") {
  Rng rng(41);
  const int radius = 4;
  for (int i = 0; i < 60; ++i) {
    const Word w = randomWord(rng, 2, 6);
    if (w.trivial()) {
      continue;
    }
    const Root r = primitiveRoot(w);
    std::set<std::string> predicted;
    for (int dir : {1, -1}) {
      for (std::int64_t j = 0;; ++j) {
        const Word p = r.root.pow(dir * j);
        if (p.length() > radius) {
          break;
        }
        predicted.insert(printWord(p));
      }
    }
    CHECK(keys(ballCentralizer(w, radius)) == predicted);
  }
}

TEST_CASE("conjugacy via cyclic normal forms") {
  const Word u = commutator(b(), c());
  const Word v = conjugate(u, c(3) * b(-2));
  CHECK(conjugateInFree(u, v));
  const auto s = conjugatorInFree(u, v);
  REQUIRE(s.has_value());
  CHECK(conjugate(u, *s) == v);
  CHECK_FALSE(conjugateInFree(b(), b(-1)));
  CHECK_FALSE(conjugatorInFree(b(), c()).has_value());
}

TEST_CASE("conjugator search on sampled pairs") {
  Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    const Word u = randomWord(rng, 2, 6);
    const Word s = randomWord(rng, 2, 4);
    const auto found = conjugatorInFree(u, conjugate(u, s));
    REQUIRE(found.has_value());
    CHECK(conjugate(u, *found) == conjugate(u, s));
  }
}

TEST_CASE("conjugation power solver") {
  // a^-k b a^k == ab has no solution (exponent sums differ).
  const Word a = Word::generator(0);
  const Word bb = Word::generator(1);
  auto sol = solveConjugationPower(bb, a, a * bb);
  CHECK_FALSE(sol.allOf);
  CHECK(sol.ks.empty());

  // r^-k (r c r^-1) r^k == c at k = 1.
  const Word p = conjugate(c(), b(-1));
  sol = solveConjugationPower(p, b(), c());
  REQUIRE(sol.ks.size() == 1);
  CHECK(sol.ks[0] == 1);

  // commuting case: every k works.
  sol = solveConjugationPower(b(2), b(), b(2));
  CHECK(sol.allOf);
}

TEST_CASE("substitution") {
  const Word w = commutator(b(), c());
  const Word img = substitute(w, [](std::int32_t g) {
    return g == B ? Word::generator(B, -1) : Word::generator(C);
  });
  CHECK(img == commutator(b(-1), c()));
}

TEST_CASE("word printing") {
  const std::vector<std::string> names = {"b", "c"};
  CHECK(printWord(commutator(b(), c(2)), names) == "b^-1*c^-2*b*c^2");
  CHECK(printWord(Word(), names) == "1");
  CHECK(printWord(b(), names) == "b");
}
