#include "gew/eqsys.hpp"

#include <algorithm>
#include <cstdlib>

namespace gew {

// --------------------------------------------------------------- MixedWord

MixedWord MixedWord::variable(std::int32_t var, std::int64_t exp) {
  MixedWord w;
  w.appendVar(var, exp);
  return w;
}

MixedWord MixedWord::coefficient(const Group& G, Element h) {
  MixedWord w;
  w.appendCoeff(G, h);
  return w;
}

MixedWord MixedWord::fromVariableWord(const Word& w) {
  MixedWord out;
  for (const auto& s : w.syllables()) {
    out.appendVar(s.gen, s.exp);
  }
  return out;
}

bool MixedWord::coefficientFree() const {
  return std::all_of(items_.begin(), items_.end(), [](const Item& it) {
    return std::holds_alternative<VarPower>(it);
  });
}

std::int32_t MixedWord::maxVariable() const {
  std::int32_t m = -1;
  for (const Item& it : items_) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      m = std::max(m, vp->var);
    }
  }
  return m;
}

void MixedWord::appendVar(std::int32_t var, std::int64_t exp) {
  if (exp == 0) {
    return;
  }
  if (!items_.empty()) {
    if (auto* vp = std::get_if<VarPower>(&items_.back());
        vp && vp->var == var) {
      vp->exp += exp;
      if (vp->exp == 0) {
        items_.pop_back();
      }
      return;
    }
  }
  items_.push_back(VarPower{var, exp});
}

void MixedWord::appendCoeff(const Group& G, const Element& h) {
  G.checkElement(h);
  if (G.isId(h)) {
    return;
  }
  if (!items_.empty()) {
    if (auto* coeff = std::get_if<Element>(&items_.back())) {
      Element merged = G.mul(*coeff, h);
      if (G.isId(merged)) {
        items_.pop_back();
      } else {
        *coeff = std::move(merged);
      }
      return;
    }
  }
  items_.push_back(h);
}

MixedWord MixedWord::times(const Group& G, const MixedWord& other) const {
  MixedWord out = *this;
  for (const Item& it : other.items_) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      out.appendVar(vp->var, vp->exp);
    } else {
      out.appendCoeff(G, std::get<Element>(it));
    }
  }
  return out;
}

MixedWord MixedWord::inverseWord(const Group& G) const {
  MixedWord out;
  for (auto it = items_.rbegin(); it != items_.rend(); ++it) {
    if (const auto* vp = std::get_if<VarPower>(&*it)) {
      out.appendVar(vp->var, -vp->exp);
    } else {
      out.appendCoeff(G, G.inv(std::get<Element>(*it)));
    }
  }
  return out;
}

MixedWord MixedWord::powWord(const Group& G, std::int64_t k) const {
  if (k == 0) {
    return MixedWord();
  }
  const MixedWord base = k > 0 ? *this : inverseWord(G);
  MixedWord out;
  for (std::int64_t i = 0; i < std::abs(k); ++i) {
    out = out.times(G, base);
  }
  return out;
}

MixedWord MixedWord::conjugatedBy(const Group& G, const MixedWord& s) const {
  return s.inverseWord(G).times(G, *this).times(G, s);
}

MixedWord MixedWord::commutatorWith(const Group& G,
                                    const MixedWord& other) const {
  return inverseWord(G)
      .times(G, other.inverseWord(G))
      .times(G, *this)
      .times(G, other);
}

MixedWord MixedWord::substituteVar(const Group& G, std::int32_t var,
                                   const MixedWord& replacement) const {
  MixedWord out;
  for (const Item& it : items_) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      if (vp->var == var) {
        out = out.times(G, replacement.powWord(G, vp->exp));
      } else {
        out.appendVar(vp->var, vp->exp);
      }
    } else {
      out.appendCoeff(G, std::get<Element>(it));
    }
  }
  return out;
}

ExponentVector MixedWord::variableExponents() const {
  ExponentVector ev;
  for (const Item& it : items_) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      ev[vp->var] += vp->exp;
    }
  }
  std::erase_if(ev, [](const auto& kv) { return kv.second == 0; });
  return ev;
}

Word MixedWord::variableWord() const {
  if (!coefficientFree()) {
    throw Error("mixed word still contains coefficients");
  }
  std::vector<Syllable> syls;
  for (const Item& it : items_) {
    const auto& vp = std::get<VarPower>(it);
    syls.push_back({vp.var, vp.exp});
  }
  return Word::fromSyllables(syls);
}

Element MixedWord::evaluate(const Group& G,
                            std::span<const Element> assignment) const {
  Element acc = G.id();
  for (const Item& it : items_) {
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      if (vp->var < 0 ||
          static_cast<std::size_t>(vp->var) >= assignment.size()) {
        throw Error("assignment does not cover variable " +
                    std::to_string(vp->var));
      }
      acc = G.mul(acc,
                  G.power(assignment[static_cast<std::size_t>(vp->var)],
                          vp->exp));
    } else {
      acc = G.mul(acc, std::get<Element>(it));
    }
  }
  return acc;
}

std::string MixedWord::print(const Group& G,
                             std::span<const std::string> varNames) const {
  if (items_.empty()) {
    return "1";
  }
  std::string out;
  for (const Item& it : items_) {
    if (!out.empty()) {
      out += "*";
    }
    if (const auto* vp = std::get_if<VarPower>(&it)) {
      const std::string name =
          static_cast<std::size_t>(vp->var) < varNames.size()
              ? varNames[static_cast<std::size_t>(vp->var)]
              : "v" + std::to_string(vp->var);
      out += "?" + name;
      if (vp->exp != 1) {
        out += "^" + std::to_string(vp->exp);
      }
    } else {
      const std::string p = G.print(std::get<Element>(it));
      const bool atom =
          p.find('*') == std::string::npos && p.find(' ') == std::string::npos;
      out += atom ? p : "(" + p + ")";
    }
  }
  return out;
}

bool MixedWord::sameAs(const Group& G, const MixedWord& other) const {
  if (items_.size() != other.items_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto* vp = std::get_if<VarPower>(&items_[i]);
    const auto* ovp = std::get_if<VarPower>(&other.items_[i]);
    if ((vp == nullptr) != (ovp == nullptr)) {
      return false;
    }
    if (vp) {
      if (!(*vp == *ovp)) {
        return false;
      }
    } else if (!G.equal(std::get<Element>(items_[i]),
                        std::get<Element>(other.items_[i]))) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------- EquationSystem

EquationSystem::EquationSystem(GroupHandle group,
                               std::vector<std::string> varNames)
    : group_(std::move(group)), varNames_(std::move(varNames)) {
  if (!group_) {
    throw Error("equation system needs a group");
  }
}

std::int32_t EquationSystem::addVariable(std::string name) {
  varNames_.push_back(std::move(name));
  return static_cast<std::int32_t>(varNames_.size()) - 1;
}

void EquationSystem::addEquation(MixedWord lhs, Element rhs) {
  if (lhs.maxVariable() >= variableCount()) {
    throw Error("equation uses a variable outside the system's list");
  }
  group_->checkElement(rhs);
  eqs_.push_back({std::move(lhs), std::move(rhs)});
}

bool EquationSystem::coefficientFree() const {
  return std::all_of(eqs_.begin(), eqs_.end(), [](const Equation& e) {
    return e.lhs.coefficientFree();
  });
}

std::vector<bool> EquationSystem::evaluate(
    std::span<const Element> assignment) const {
  if (static_cast<std::int32_t>(assignment.size()) != variableCount()) {
    throw Error("assignment arity does not match the variable list");
  }
  std::vector<bool> out;
  out.reserve(eqs_.size());
  for (const Equation& e : eqs_) {
    out.push_back(group_->equal(e.lhs.evaluate(*group_, assignment), e.rhs));
  }
  return out;
}

bool EquationSystem::satisfied(std::span<const Element> assignment) const {
  const std::vector<bool> r = evaluate(assignment);
  return std::all_of(r.begin(), r.end(), [](bool b) { return b; });
}

std::string EquationSystem::print() const {
  std::string out;
  for (const Equation& e : eqs_) {
    out += e.lhs.print(*group_, varNames_) + " = " + group_->print(e.rhs) +
           "\n";
  }
  return out;
}

// ------------------------------------------------------------- elimination

EquationSystem eliminateCoefficients(const EquationSystem& sys) {
  const Group& G = sys.group();
  EquationSystem out(sys.groupHandle(), sys.variableNames());

  // one fresh variable per distinct coefficient value, shared with its
  // inverse so that [x^N, h] becomes [x^N, t]
  std::vector<Element> classValues;
  std::vector<std::int32_t> classVars;
  auto classOf = [&](const Element& h) -> std::pair<std::int32_t, int> {
    for (std::size_t i = 0; i < classValues.size(); ++i) {
      if (G.equal(classValues[i], h)) {
        return {classVars[i], 1};
      }
      if (G.equal(G.inv(classValues[i]), h)) {
        return {classVars[i], -1};
      }
    }
    classValues.push_back(h);
    std::string name = "z" + std::to_string(classValues.size());
    for (const auto& existing : sys.variableNames()) {
      if (existing == name) {
        name = "_" + name;
      }
    }
    classVars.push_back(out.addVariable(name));
    return {classVars.back(), 1};
  };

  std::vector<Equation> rewritten;
  for (const Equation& e : sys.equations()) {
    MixedWord lhs;
    for (const MixedWord::Item& it : e.lhs.items()) {
      if (const auto* vp = std::get_if<VarPower>(&it)) {
        lhs.appendVar(vp->var, vp->exp);
      } else {
        const auto [var, sign] = classOf(std::get<Element>(it));
        lhs.appendVar(var, sign);
      }
    }
    rewritten.push_back({std::move(lhs), e.rhs});
  }
  for (Equation& e : rewritten) {
    out.addEquation(std::move(e.lhs), std::move(e.rhs));
  }
  for (std::size_t i = 0; i < classValues.size(); ++i) {
    out.addEquation(MixedWord::variable(classVars[i]), classValues[i]);
  }
  return out;
}

// --------------------------------------------------------------- reduction

std::vector<std::vector<std::int64_t>> exponentMatrix(
    const EquationSystem& sys) {
  if (!sys.coefficientFree()) {
    throw Error("exponent matrix needs a coefficient-free system");
  }
  const std::size_t n = static_cast<std::size_t>(sys.variableCount());
  std::vector<std::vector<std::int64_t>> M;
  for (const Equation& e : sys.equations()) {
    std::vector<std::int64_t> row(n, 0);
    for (const auto& [var, exp] : e.lhs.variableExponents()) {
      row[static_cast<std::size_t>(var)] = exp;
    }
    M.push_back(std::move(row));
  }
  return M;
}

namespace {

// Working copy of a coefficient-free system: lhs as words over variables.
struct PureRows {
  std::vector<Word> words;
  std::vector<Element> rhs;

  void apply(const Group& G, const Move& move) {
    if (const auto* rm = std::get_if<RowMove>(&move)) {
      const std::size_t i = static_cast<std::size_t>(rm->eq);
      const std::size_t j = static_cast<std::size_t>(rm->other);
      words[i] = words[i] * words[j].pow(rm->sign);
      rhs[i] = G.mul(rhs[i], G.power(rhs[j], rm->sign));
      return;
    }
    if (const auto* vm = std::get_if<VarMove>(&move)) {
      const Word repl =
          Word::generator(vm->var) * Word::generator(vm->other, vm->sign);
      for (Word& w : words) {
        w = substitute(w, [&](std::int32_t g) {
          return g == vm->var ? repl : Word::generator(g);
        });
      }
      return;
    }
    const auto& im = std::get<InvertMove>(move);
    for (Word& w : words) {
      w = substitute(w, [&](std::int32_t g) {
        return g == im.var ? Word::generator(im.var, -1) : Word::generator(g);
      });
    }
  }

  std::vector<std::vector<std::int64_t>> matrix(std::size_t n) const {
    std::vector<std::vector<std::int64_t>> M;
    for (const Word& w : words) {
      std::vector<std::int64_t> row(n, 0);
      for (const auto& [g, e] : exponentVector(w)) {
        row[static_cast<std::size_t>(g)] = e;
      }
      M.push_back(std::move(row));
    }
    return M;
  }
};

PureRows pureRows(const EquationSystem& sys) {
  if (!sys.coefficientFree()) {
    throw Error("diagonal reduction needs a coefficient-free system");
  }
  PureRows rows;
  for (const Equation& e : sys.equations()) {
    rows.words.push_back(e.lhs.variableWord());
    rows.rhs.push_back(e.rhs);
  }
  return rows;
}

}  // namespace

DiagonalReduction reduceToDiagonal(const EquationSystem& sys) {
  const Group& G = sys.group();
  PureRows rows = pureRows(sys);
  const std::size_t m = rows.words.size();
  const std::size_t n = static_cast<std::size_t>(sys.variableCount());

  SubstitutionLog log;
  auto move = [&](Move mv) {
    rows.apply(G, mv);
    log.moves.push_back(mv);
  };

  std::vector<bool> rowActive(m, true);
  std::vector<bool> colActive(n, true);

  for (;;) {
    const auto M = rows.matrix(n);
    // minimal |entry| over the active submatrix
    std::int64_t best = 0;
    std::size_t pi = 0;
    std::size_t pk = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!rowActive[i]) {
        continue;
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (!colActive[k] || M[i][k] == 0) {
          continue;
        }
        if (best == 0 || std::abs(M[i][k]) < best) {
          best = std::abs(M[i][k]);
          pi = i;
          pk = k;
        }
      }
    }
    if (best == 0) {
      break;
    }
    const std::int64_t p = M[pi][pk];
    bool touched = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == pi || !rowActive[i] || M[i][pk] == 0) {
        continue;
      }
      const std::int64_t q = M[i][pk] / p;
      for (std::int64_t t = 0; t < std::abs(q); ++t) {
        move(RowMove{static_cast<std::int32_t>(i),
                     static_cast<std::int32_t>(pi), q > 0 ? -1 : 1});
      }
      touched = touched || q != 0;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (k == pk || !colActive[k] || M[pi][k] == 0) {
        continue;
      }
      const std::int64_t q = M[pi][k] / p;
      // x_pk -> x_pk * x_k^s adds s * col_pk to col_k
      for (std::int64_t t = 0; t < std::abs(q); ++t) {
        move(VarMove{static_cast<std::int32_t>(pk),
                     static_cast<std::int32_t>(k), q > 0 ? -1 : 1});
      }
      touched = touched || q != 0;
    }
    if (!touched) {
      // row pi and column pk are clear apart from the pivot
      rowActive[pi] = false;
      colActive[pk] = false;
    }
  }

  // sign fix: multiplicities must be positive
  {
    const auto M = rows.matrix(n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (M[i][k] < 0) {
          move(InvertMove{static_cast<std::int32_t>(k)});
        }
      }
    }
  }

  DiagonalForm form;
  form.group = sys.groupHandle();
  form.varNames = sys.variableNames();
  for (std::size_t i = 0; i < m; ++i) {
    const ExponentVector ev = exponentVector(rows.words[i]);
    if (ev.empty()) {
      form.pures.push_back({rows.words[i], rows.rhs[i]});
      continue;
    }
    if (ev.size() != 1) {
      throw Error("internal: reduction left a row with two pivot columns");
    }
    const auto [var, mult] = *ev.begin();
    if (mult <= 0) {
      throw Error("internal: reduction left a nonpositive multiplicity");
    }
    DiagonalHead head;
    head.var = var;
    head.multiplicity = mult;
    head.tail = Word::generator(var, -mult) * rows.words[i];
    head.rhs = rows.rhs[i];
    form.heads.push_back(std::move(head));
  }
  return {std::move(form), std::move(log)};
}

EquationSystem DiagonalForm::toSystem() const {
  EquationSystem sys(group, varNames);
  for (const DiagonalHead& h : heads) {
    const Word lhs = Word::generator(h.var, h.multiplicity) * h.tail;
    sys.addEquation(MixedWord::fromVariableWord(lhs), h.rhs);
  }
  for (const DiagonalPure& p : pures) {
    sys.addEquation(MixedWord::fromVariableWord(p.tail), p.rhs);
  }
  return sys;
}

EquationSystem applyLog(const EquationSystem& sys,
                        const SubstitutionLog& log) {
  const Group& G = sys.group();
  PureRows rows = pureRows(sys);
  for (const Move& mv : log.moves) {
    rows.apply(G, mv);
  }
  EquationSystem out(sys.groupHandle(), sys.variableNames());
  for (std::size_t i = 0; i < rows.words.size(); ++i) {
    out.addEquation(MixedWord::fromVariableWord(rows.words[i]), rows.rhs[i]);
  }
  return out;
}

// ------------------------------------------------------- solution mapping

namespace {

void checkAssignmentVar(const Assignment& a, std::int32_t var) {
  if (var < 0 || static_cast<std::size_t>(var) >= a.size()) {
    throw Error("substitution log mentions a variable outside the "
                "assignment");
  }
}

}  // namespace

Assignment mapSolutionForward(const Group& G, const SubstitutionLog& log,
                              Assignment a) {
  for (const Move& mv : log.moves) {
    if (const auto* vm = std::get_if<VarMove>(&mv)) {
      checkAssignmentVar(a, vm->var);
      checkAssignmentVar(a, vm->other);
      const std::size_t i = static_cast<std::size_t>(vm->var);
      const std::size_t j = static_cast<std::size_t>(vm->other);
      a[i] = G.mul(a[i], G.power(a[j], -vm->sign));
    } else if (const auto* im = std::get_if<InvertMove>(&mv)) {
      checkAssignmentVar(a, im->var);
      const std::size_t i = static_cast<std::size_t>(im->var);
      a[i] = G.inv(a[i]);
    }
  }
  return a;
}

Assignment mapSolutionBack(const Group& G, const SubstitutionLog& log,
                           Assignment a) {
  for (auto it = log.moves.rbegin(); it != log.moves.rend(); ++it) {
    if (const auto* vm = std::get_if<VarMove>(&*it)) {
      checkAssignmentVar(a, vm->var);
      checkAssignmentVar(a, vm->other);
      const std::size_t i = static_cast<std::size_t>(vm->var);
      const std::size_t j = static_cast<std::size_t>(vm->other);
      a[i] = G.mul(a[i], G.power(a[j], vm->sign));
    } else if (const auto* im = std::get_if<InvertMove>(&*it)) {
      checkAssignmentVar(a, im->var);
      const std::size_t i = static_cast<std::size_t>(im->var);
      a[i] = G.inv(a[i]);
    }
  }
  return a;
}

}  // namespace gew
