#include "gew/verbal.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace gew {

LawWord::LawWord(Word w, std::int32_t r) : word(std::move(w)), arity(r) {
  if (arity < 1) {
    throw Error("a law needs at least one variable");
  }
  if (word.maxGenerator() >= arity) {
    throw Error("law word uses a variable beyond its arity");
  }
}

Element lawEvaluate(const LawWord& I, const Group& G,
                    std::span<const Element> tuple) {
  if (static_cast<std::int32_t>(tuple.size()) != I.arity) {
    throw Error("law arity mismatch");
  }
  Element acc = G.id();
  for (const auto& s : I.word.syllables()) {
    acc = G.mul(acc, G.power(tuple[static_cast<std::size_t>(s.gen)], s.exp));
  }
  return acc;
}

Element evaluateWitness(const LawWord& I, const Group& G, const Witness& w) {
  Element acc = G.id();
  for (const WitnessTerm& t : w.expression) {
    Element v = lawEvaluate(I, G, t.tuple);
    if (t.sign < 0) {
      v = G.inv(v);
    }
    acc = G.mul(acc, v);
  }
  return acc;
}

Witness invertWitness(const Group& G, const Witness& w) {
  Witness out;
  out.element = G.inv(w.element);
  for (auto it = w.expression.rbegin(); it != w.expression.rend(); ++it) {
    out.expression.push_back({-it->sign, it->tuple});
  }
  return out;
}

std::vector<Witness> verbalBall(const Group& G, const LawWord& I,
                                const std::vector<Element>& U, int radius,
                                int length) {
  const Ball b = ball(G, U, radius, /*probeExhaustive=*/false);
  ElementDedup seen(G);

  std::vector<Witness> out;
  seen.insert(G.id());
  out.push_back({G.id(), {}});

  // distinct single law values and their inverses, streamed in tuple order
  std::vector<Witness> atoms;
  std::vector<std::size_t> idx(static_cast<std::size_t>(I.arity), 0);
  for (;;) {
    std::vector<Element> tuple;
    tuple.reserve(idx.size());
    for (const std::size_t i : idx) {
      tuple.push_back(b.elements[i]);
    }
    Element v = lawEvaluate(I, G, tuple);
    Element vi = G.inv(v);
    if (seen.insert(v)) {
      atoms.push_back({std::move(v), {{1, tuple}}});
    }
    if (seen.insert(vi)) {
      atoms.push_back({std::move(vi), {{-1, std::move(tuple)}}});
    }

    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == b.elements.size()) {
      idx[pos] = 0;
      ++pos;
    }
    if (pos == idx.size()) {
      break;
    }
  }
  out.insert(out.end(), atoms.begin(), atoms.end());

  // products of distinct values reach the same elements as products of all
  // values, with the shortest witness kept
  std::vector<Witness> frontier = atoms;
  for (int l = 2; l <= length; ++l) {
    std::vector<Witness> next;
    for (const Witness& w : frontier) {
      for (const Witness& a : atoms) {
        Element prod = G.mul(w.element, a.element);
        if (!seen.insert(prod)) {
          continue;
        }
        Witness nw;
        nw.element = std::move(prod);
        nw.expression = w.expression;
        nw.expression.push_back(a.expression.front());
        out.push_back(nw);
        next.push_back(std::move(nw));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

std::optional<Witness> findWitness(const Group& G, const LawWord& I,
                                   const std::vector<Element>& U, int radius,
                                   int length, const Element& target) {
  for (const Witness& w : verbalBall(G, I, U, radius, length)) {
    if (G.equal(w.element, target)) {
      return w;
    }
  }
  return std::nullopt;
}

LawWord buildFreeProductLaw(std::span<const LawWord> laws) {
  if (laws.size() < 2) {
    throw Error("the free-product law needs at least two factor laws");
  }
  std::vector<Word> shifted;
  std::int32_t offset = 0;
  for (const LawWord& law : laws) {
    const std::int32_t delta = offset;
    shifted.push_back(substitute(law.word, [delta](std::int32_t g) {
      return Word::generator(g + delta);
    }));
    offset += law.arity;
  }
  return LawWord(leftNormedCommutator(shifted), offset);
}

std::int64_t lawCyclicIndex(const LawWord& I) {
  std::int64_t d = 0;
  for (const auto& [g, e] : exponentVector(I.word)) {
    d = std::gcd(d, std::abs(e));
  }
  return d;
}

bool eWordMembership(const EWordTemplate& E, const LawWord& I,
                     const Group& G) {
  std::size_t slot = 0;
  std::int64_t xPower = 0;
  for (const MixedWord::Item& it : E.body.items()) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      if (vp->var != 0) {
        throw Error("templates are words in the single symbol x");
      }
      xPower += vp->exp;
      continue;
    }
    if (slot >= E.witnesses.size()) {
      throw Error("template constant without a witness");
    }
    const Witness& w = E.witnesses[slot++];
    const Element& c = std::get<Element>(it);
    if (!G.equal(w.element, c) ||
        !G.equal(evaluateWitness(I, G, w), c)) {
      throw Error("template constant does not match its witness");
    }
  }
  if (slot != E.witnesses.size()) {
    throw Error("template carries more witnesses than constants");
  }
  // Killing I(H) projects <x>_inf * I(H) onto <x>_inf, so membership is
  // exactly: the surviving exponent lies in I(<x>_inf) = <x^d>.
  const std::int64_t d = lawCyclicIndex(I);
  if (d == 0) {
    return xPower == 0;
  }
  return xPower % d == 0;
}

Cor3Report checkCorollary3(GroupHandle H, const LawWord& I,
                           const std::vector<Element>& fs,
                           const std::vector<Element>& U, int radius,
                           int witnessLength) {
  const Group& G = *H;
  Cor3Report report;
  for (const Element& f : fs) {
    auto w = findWitness(G, I, U, radius, witnessLength, f);
    if (!w) {
      throw Error("element is not witnessed in the sampled verbal ball");
    }
    report.witnesses.push_back(std::move(*w));
  }
  const Ball b = ball(G, U, radius, /*probeExhaustive=*/false);
  for (const Element& x : b.elements) {
    const bool centralizesFs =
        std::all_of(fs.begin(), fs.end(), [&](const Element& f) {
          return G.isId(G.commutatorOf(f, x));
        });
    if (centralizesFs) {
      report.commonCentralizer.push_back(x);
    }
    const bool central = std::all_of(U.begin(), U.end(), [&](const Element& u) {
      return G.isId(G.commutatorOf(u, x));
    });
    if (central) {
      report.centerInBall.push_back(x);
    }
  }
  // both lists are subsequences of the same ball enumeration
  report.pass =
      report.commonCentralizer.size() == report.centerInBall.size() &&
      std::equal(report.commonCentralizer.begin(),
                 report.commonCentralizer.end(), report.centerInBall.begin(),
                 [&](const Element& a, const Element& c) {
                   return G.equal(a, c);
                 });
  return report;
}

Cor4Report checkCorollary4(const std::vector<GroupHandle>& factors,
                           std::vector<LawWord> laws, int radius) {
  if (factors.size() == 2) {
    const auto* c0 = dynamic_cast<const CyclicGroup*>(factors[0].get());
    const auto* c1 = dynamic_cast<const CyclicGroup*>(factors[1].get());
    if (c0 && c1 && c0->modulus() == 2 && c1->modulus() == 2) {
      throw Error("Z2 * Z2 is the infinite dihedral group and is excluded");
    }
  }
  auto Hh = makeFreeProduct(factors);
  const auto* H = dynamic_cast<const FreeProductGroup*>(Hh.get());

  if (laws.empty()) {
    for (const GroupHandle& f : factors) {
      const auto* c = dynamic_cast<const CyclicGroup*>(f.get());
      if (c == nullptr) {
        throw Error("no default law for a non-cyclic factor; pass laws "
                    "explicitly");
      }
      laws.emplace_back(Word::generator(0, c->modulus()), 1);
    }
  }
  if (laws.size() != factors.size()) {
    throw Error("need exactly one law per factor");
  }

  Cor4Report report{buildFreeProductLaw(laws), {}, {}, false, false, false,
                    false};

  std::vector<Element> U;
  for (const auto& [name, g] : H->generators()) {
    U.push_back(g);
  }
  U = symmetrize(*H, U);

  const std::vector<Witness> values =
      verbalBall(*H, report.law, U, radius, /*length=*/1);
  for (std::size_t i = 0; i < values.size() && !report.foundPair; ++i) {
    if (H->isId(values[i].element)) {
      continue;
    }
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (H->isId(values[j].element)) {
        continue;
      }
      if (!H->isId(H->commutatorOf(values[i].element, values[j].element))) {
        report.f1 = values[i];
        report.f2 = values[j];
        report.foundPair = true;
        break;
      }
    }
  }
  if (!report.foundPair) {
    return report;
  }

  const auto* D = dynamic_cast<const DirectProduct*>(H->directHandle().get());
  report.inCartesian = D->isId(H->projectToDirect(report.f1.element)) &&
                       D->isId(H->projectToDirect(report.f2.element));

  const Ball b = ball(*H, U, radius, /*probeExhaustive=*/false);
  report.centralizerTrivial = true;
  for (const Element& x : b.elements) {
    if (H->isId(x)) {
      continue;
    }
    if (H->isId(H->commutatorOf(x, report.f1.element)) &&
        H->isId(H->commutatorOf(x, report.f2.element))) {
      report.centralizerTrivial = false;
      break;
    }
  }
  report.pass =
      report.foundPair && report.inCartesian && report.centralizerTrivial;
  return report;
}

}  // namespace gew
