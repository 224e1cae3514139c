// Shared test helpers: a deterministic RNG, random word generation and a
// small permutation group implementing the group contract (the independent
// table-style oracle used by solver and pipeline tests).

#ifndef GEW_TESTS_SUPPORT_HPP
#define GEW_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gew/eqsys.hpp"
#include "gew/groups.hpp"

namespace gewtest {

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

inline gew::Word randomWord(Rng& rng, std::int32_t rank, int maxLen) {
  std::vector<gew::Letter> ls;
  const int len = static_cast<int>(rng.below(maxLen + 1));
  for (int i = 0; i < len; ++i) {
    ls.push_back({static_cast<std::int32_t>(rng.below(rank)),
                  rng.below(2) == 0 ? 1 : -1});
  }
  return gew::Word::fromLetters(ls);
}

inline gew::Word randomReducedNonEmpty(Rng& rng, std::int32_t rank,
                                       int maxLen) {
  for (;;) {
    const gew::Word w = randomWord(rng, rank, maxLen);
    if (!w.trivial()) {
      return w;
    }
  }
}

// Permutations of {0..n-1} under composition (x then y).
class PermutationGroup : public gew::Group {
 public:
  explicit PermutationGroup(std::int32_t points) : points_(points) {}

  static gew::Element perm(std::vector<std::int32_t> images) {
    return gew::Element::permutation(std::move(images));
  }

  std::string describe() const override {
    return "sym(" + std::to_string(points_) + ")";
  }
  gew::Element id() const override {
    std::vector<std::int32_t> im(static_cast<std::size_t>(points_));
    std::iota(im.begin(), im.end(), 0);
    return perm(std::move(im));
  }
  gew::Element mul(const gew::Element& x,
                   const gew::Element& y) const override {
    checkElement(x);
    checkElement(y);
    std::vector<std::int32_t> im(static_cast<std::size_t>(points_));
    for (std::int32_t i = 0; i < points_; ++i) {
      im[static_cast<std::size_t>(i)] =
          y.asPermutation()[static_cast<std::size_t>(
              x.asPermutation()[static_cast<std::size_t>(i)])];
    }
    return perm(std::move(im));
  }
  gew::Element inv(const gew::Element& x) const override {
    checkElement(x);
    std::vector<std::int32_t> im(static_cast<std::size_t>(points_));
    for (std::int32_t i = 0; i < points_; ++i) {
      im[static_cast<std::size_t>(
          x.asPermutation()[static_cast<std::size_t>(i)])] = i;
    }
    return perm(std::move(im));
  }
  bool equal(const gew::Element& x, const gew::Element& y) const override {
    checkElement(x);
    checkElement(y);
    return x.asPermutation() == y.asPermutation();
  }
  std::string key(const gew::Element& x) const override {
    std::string out = "m";
    for (const std::int32_t i : x.asPermutation()) {
      out += ":" + std::to_string(i);
    }
    return out;
  }
  std::string print(const gew::Element& x) const override {
    std::string out = "[";
    for (std::size_t i = 0; i < x.asPermutation().size(); ++i) {
      out += (i ? " " : "") + std::to_string(x.asPermutation()[i]);
    }
    return out + "]";
  }
  void checkElement(const gew::Element& x) const override {
    if (static_cast<std::int32_t>(x.asPermutation().size()) != points_) {
      throw gew::Error("permutation acts on the wrong number of points");
    }
  }
  bool abelian() const override { return points_ <= 2; }
  std::optional<std::uint64_t> order() const override {
    std::uint64_t f = 1;
    for (std::int32_t i = 2; i <= points_; ++i) {
      f *= static_cast<std::uint64_t>(i);
    }
    return f;
  }
  std::vector<std::pair<std::string, gew::Element>> generators()
      const override {
    // adjacent transpositions
    std::vector<std::pair<std::string, gew::Element>> gens;
    for (std::int32_t i = 0; i + 1 < points_; ++i) {
      std::vector<std::int32_t> im(static_cast<std::size_t>(points_));
      std::iota(im.begin(), im.end(), 0);
      std::swap(im[static_cast<std::size_t>(i)],
                im[static_cast<std::size_t>(i + 1)]);
      gens.emplace_back("s" + std::to_string(i + 1), perm(std::move(im)));
    }
    return gens;
  }

 private:
  std::int32_t points_;
};

// Every element of a finite group, via ball closure over its generators.
inline std::vector<gew::Element> allElements(const gew::Group& G) {
  std::vector<gew::Element> U;
  for (const auto& [name, g] : G.generators()) {
    U.push_back(g);
  }
  const gew::Ball b = gew::ball(G, gew::symmetrize(G, U), 64);
  if (!b.exhaustive) {
    throw gew::Error("allElements needs a finite group");
  }
  return b.elements;
}

// Naive full-enumeration solver over a finite group: every assignment in
// G^n is tried. Deliberately independent of the solver module.
inline std::vector<gew::Assignment> bruteSolutions(
    const gew::EquationSystem& sys) {
  const auto all = allElements(sys.group());
  const std::size_t n = static_cast<std::size_t>(sys.variableCount());
  std::vector<gew::Assignment> found;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    gew::Assignment a;
    for (const std::size_t i : idx) {
      a.push_back(all[i]);
    }
    if (sys.satisfied(a)) {
      found.push_back(std::move(a));
    }
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == all.size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == n) {
      break;
    }
  }
  return found;
}

inline std::string assignmentKey(const gew::Group& G,
                                 const gew::Assignment& a) {
  std::string out;
  for (const auto& e : a) {
    out += G.key(e) + "|";
  }
  return out;
}

// Random coefficient-free system: up to maxVars variables and maxEqs
// equations, syllable exponents in [-3, 3].
inline gew::EquationSystem randomPureSystem(Rng& rng, gew::GroupHandle G,
                                            int maxVars, int maxEqs) {
  const std::int32_t nvars = 1 + static_cast<std::int32_t>(rng.below(maxVars));
  std::vector<std::string> names;
  for (std::int32_t v = 0; v < nvars; ++v) {
    names.push_back("x" + std::to_string(v + 1));
  }
  gew::EquationSystem sys(G, names);
  const auto all = allElements(*G);
  const int neqs = 1 + static_cast<int>(rng.below(maxEqs));
  for (int e = 0; e < neqs; ++e) {
    gew::MixedWord lhs;
    const int syllables = 1 + static_cast<int>(rng.below(4));
    for (int s = 0; s < syllables; ++s) {
      std::int64_t exp = rng.below(7) - 3;
      if (exp == 0) {
        exp = 1;
      }
      lhs.appendVar(static_cast<std::int32_t>(rng.below(nvars)), exp);
    }
    const auto& rhs = all[static_cast<std::size_t>(
        rng.below(static_cast<std::int64_t>(all.size())))];
    sys.addEquation(std::move(lhs), rhs);
  }
  return sys;
}

// The worked semidirect example: H = F2(b,c) x| <a>_2 with b^a = b^-1,
// c^a = c, its generating set U = {(b,a), (c,a), (c^-1,a), (1,a)}.
inline gew::GroupHandle exampleGroupH() {
  return gew::makeSemidirect(
      2, {"b", "c"}, 2, "a",
      {gew::Word::generator(0, -1), gew::Word::generator(1)});
}

inline gew::Element semiElem(const gew::Word& w, std::int64_t e) {
  return gew::Element::semi(w, e);
}

inline std::vector<gew::Element> exampleGeneratingU() {
  return {semiElem(gew::Word::generator(0), 1),
          semiElem(gew::Word::generator(1), 1),
          semiElem(gew::Word::generator(1, -1), 1),
          semiElem(gew::Word(), 1)};
}

}  // namespace gewtest

#endif  // GEW_TESTS_SUPPORT_HPP
