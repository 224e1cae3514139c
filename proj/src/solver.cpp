#include "gew/solver.hpp"

#include <algorithm>
#include <numeric>

namespace gew {

SearchReport solveBounded(const EquationSystem& sys,
                          const std::vector<Element>& U, int radius) {
  const Group& G = sys.group();
  const Ball b = ball(G, U, radius);
  const std::int32_t n = sys.variableCount();

  SearchReport report;
  report.searchRadius = radius;
  report.exhaustive = b.exhaustive;

  // equations indexed by the last variable they mention
  std::vector<std::vector<std::size_t>> byLastVar(
      static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < sys.equations().size(); ++e) {
    const std::int32_t mv = sys.equations()[e].lhs.maxVariable();
    if (mv < 0) {
      // constant equation: decides the whole search
      const Equation& eq = sys.equations()[e];
      if (!G.equal(eq.lhs.evaluate(G, {}), eq.rhs)) {
        return report;
      }
      continue;
    }
    byLastVar[static_cast<std::size_t>(mv)].push_back(e);
  }

  struct Found {
    std::vector<std::size_t> indices;
    int totalDepth;
  };
  std::vector<Found> found;
  std::vector<std::size_t> indices(static_cast<std::size_t>(n), 0);
  Assignment partial(static_cast<std::size_t>(n));

  auto search = [&](auto&& self, std::int32_t v) -> void {
    if (v == n) {
      int depth = 0;
      for (const std::size_t i : indices) {
        depth += b.depths[i];
      }
      found.push_back({indices, depth});
      return;
    }
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      indices[static_cast<std::size_t>(v)] = i;
      partial[static_cast<std::size_t>(v)] = b.elements[i];
      bool ok = true;
      for (const std::size_t e : byLastVar[static_cast<std::size_t>(v)]) {
        const Equation& eq = sys.equations()[e];
        const std::span<const Element> prefix(partial.data(),
                                              static_cast<std::size_t>(v) + 1);
        if (!G.equal(eq.lhs.evaluate(G, prefix), eq.rhs)) {
          ok = false;
          break;
        }
      }
      if (ok) {
        self(self, v + 1);
      }
    }
  };
  if (n == 0) {
    // no variables: the constant checks above already decided
    report.solutions.push_back({});
    return report;
  }
  search(search, 0);

  std::sort(found.begin(), found.end(), [](const Found& a, const Found& b2) {
    if (a.totalDepth != b2.totalDepth) {
      return a.totalDepth < b2.totalDepth;
    }
    return a.indices < b2.indices;
  });
  for (const Found& f : found) {
    Assignment a;
    a.reserve(static_cast<std::size_t>(n));
    for (const std::size_t i : f.indices) {
      a.push_back(b.elements[i]);
    }
    report.solutions.push_back(std::move(a));
  }
  return report;
}

// ---------------------------------------------------------------- Q factor

namespace {

const DirectProduct* designatedQHost(const Group& G) {
  const auto* D = dynamic_cast<const DirectProduct*>(&G);
  if (D == nullptr || D->factors().size() < 2) {
    return nullptr;
  }
  if (dynamic_cast<const RationalVectorGroup*>(D->factors().back().get()) ==
      nullptr) {
    return nullptr;
  }
  return D;
}

const DirectProduct& requireQHost(const Group& G) {
  const auto* D = designatedQHost(G);
  if (D == nullptr) {
    throw Error("group has no designated Q factor (expected "
                "direct(..., rational(d)))");
  }
  return *D;
}

}  // namespace

bool hasDesignatedQ(const Group& G) { return designatedQHost(G) != nullptr; }

GroupHandle qQuotientHandle(const Group& G) {
  const DirectProduct& D = requireQHost(G);
  std::vector<GroupHandle> rest(D.factors().begin(), D.factors().end() - 1);
  if (rest.size() == 1) {
    return rest.front();
  }
  return makeDirect(std::move(rest));
}

Element quotientByQ(const Group& G, const Element& x) {
  const DirectProduct& D = requireQHost(G);
  D.checkElement(x);
  const auto& parts = x.asTuple();
  if (parts.size() == 2) {
    return parts.front();
  }
  return Element::tuple(
      std::vector<Element>(parts.begin(), parts.end() - 1));
}

GroupHandle qFactorHandle(const Group& G) {
  return requireQHost(G).factors().back();
}

Element qComponent(const Group& G, const Element& x) {
  const DirectProduct& D = requireQHost(G);
  D.checkElement(x);
  return x.asTuple().back();
}

Element withQComponent(const Group& G, const Element& kPart,
                       const Element& qPart) {
  const DirectProduct& D = requireQHost(G);
  std::vector<Element> parts;
  if (D.factors().size() == 2) {
    parts.push_back(kPart);
  } else {
    parts = kPart.asTuple();
  }
  parts.push_back(qPart);
  Element out = Element::tuple(std::move(parts));
  D.checkElement(out);
  return out;
}

// -------------------------------------------------------------- uniqueness

bool uniqueInBall(const EquationSystem& sys, const std::vector<Element>& U,
                  int radius, const Assignment& expected) {
  const Group& G = sys.group();
  if (static_cast<std::int32_t>(expected.size()) != sys.variableCount()) {
    throw Error("expected assignment arity does not match the system");
  }
  const SearchReport report = solveBounded(sys, U, radius);
  if (report.solutions.empty()) {
    return false;
  }
  const bool moduloQ = hasDesignatedQ(G);
  GroupHandle K = moduloQ ? qQuotientHandle(G) : nullptr;
  for (const Assignment& a : report.solutions) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (moduloQ) {
        if (!K->equal(quotientByQ(G, a[v]), quotientByQ(G, expected[v]))) {
          return false;
        }
      } else if (!G.equal(a[v], expected[v])) {
        return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------------ abelian case

std::optional<Assignment> solveDiagonalAbelian(const DiagonalForm& form,
                                               const std::vector<Element>& U) {
  const Group& G = *form.group;
  if (!G.abelian()) {
    throw Error("the diagonal construction applies to abelian groups");
  }
  for (const DiagonalPure& p : form.pures) {
    if (!G.isId(p.rhs)) {
      return std::nullopt;
    }
  }
  const Ball b = ball(G, symmetrize(G, U), 64, false);
  if (!b.exhaustive) {
    throw Error("abelian diagonal solving needs a finite group");
  }
  Assignment a(form.varNames.size(), G.id());
  for (const DiagonalHead& h : form.heads) {
    bool foundOne = false;
    for (const Element& cand : b.elements) {
      if (G.equal(G.power(cand, h.multiplicity), h.rhs)) {
        a[static_cast<std::size_t>(h.var)] = cand;
        foundOne = true;
        break;
      }
    }
    if (!foundOne) {
      return std::nullopt;
    }
  }
  return a;
}

}  // namespace gew
