#include "gew/groups.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace gew {

namespace {

std::string wordKey(const Word& w) {
  std::string out = "w";
  for (const auto& s : w.syllables()) {
    out += ":" + std::to_string(s.gen) + "^" + std::to_string(s.exp);
  }
  return out;
}

std::string exponentKey(const ExponentVector& ev) {
  std::string out = "e";
  for (const auto& [g, e] : ev) {
    out += ":" + std::to_string(g) + "^" + std::to_string(e);
  }
  return out;
}

std::vector<std::string> defaultNames(const std::string& stem,
                                      std::int32_t count) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(count));
  for (std::int32_t i = 0; i < count; ++i) {
    names.push_back(stem + std::to_string(i + 1));
  }
  return names;
}

}  // namespace

// ---------------------------------------------------------------- Rational

Rational::Rational(std::int64_t num, std::int64_t den) : num_(num), den_(den) {
  if (den_ == 0) {
    throw Error("rational with zero denominator");
  }
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const std::int64_t g = std::gcd(std::abs(num_), den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

std::string Rational::str() const {
  if (den_ == 1) {
    return std::to_string(num_);
  }
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// ----------------------------------------------------------------- Element

Element Element::word(Word w) {
  Element e;
  e.v_ = std::move(w);
  return e;
}

Element Element::residue(std::int64_t r) {
  Element e;
  e.v_ = r;
  return e;
}

Element Element::tuple(std::vector<Element> parts) {
  Element e;
  e.v_ = std::move(parts);
  return e;
}

Element Element::semi(Word w, std::int64_t r) {
  Element e;
  e.v_ = SemiPair{std::move(w), r};
  return e;
}

Element Element::syllables(std::vector<FPSyllable> syls) {
  Element e;
  e.v_ = std::move(syls);
  return e;
}

Element Element::rationals(std::vector<Rational> coords) {
  Element e;
  e.v_ = std::move(coords);
  return e;
}

Element Element::permutation(std::vector<std::int32_t> images) {
  Element e;
  e.v_ = std::move(images);
  return e;
}

namespace {
[[noreturn]] void payloadMismatch(const char* want) {
  throw Error(std::string("element does not belong to this group (expected ") +
              want + " payload)");
}
}  // namespace

const Word& Element::asWord() const {
  if (const auto* p = std::get_if<Word>(&v_)) {
    return *p;
  }
  payloadMismatch("word");
}

std::int64_t Element::asResidue() const {
  if (const auto* p = std::get_if<std::int64_t>(&v_)) {
    return *p;
  }
  payloadMismatch("residue");
}

const std::vector<Element>& Element::asTuple() const {
  if (const auto* p = std::get_if<std::vector<Element>>(&v_)) {
    return *p;
  }
  payloadMismatch("tuple");
}

const SemiPair& Element::asSemi() const {
  if (const auto* p = std::get_if<SemiPair>(&v_)) {
    return *p;
  }
  payloadMismatch("semidirect pair");
}

const std::vector<FPSyllable>& Element::asSyllables() const {
  if (const auto* p = std::get_if<std::vector<FPSyllable>>(&v_)) {
    return *p;
  }
  payloadMismatch("syllable");
}

const std::vector<Rational>& Element::asRationals() const {
  if (const auto* p = std::get_if<std::vector<Rational>>(&v_)) {
    return *p;
  }
  payloadMismatch("rational vector");
}

const std::vector<std::int32_t>& Element::asPermutation() const {
  if (const auto* p = std::get_if<std::vector<std::int32_t>>(&v_)) {
    return *p;
  }
  payloadMismatch("permutation");
}

// ------------------------------------------------------------------- Group

Element Group::power(const Element& x, std::int64_t k) const {
  checkElement(x);
  if (k == 0) {
    return id();
  }
  Element base = k > 0 ? x : inv(x);
  std::int64_t n = std::abs(k);
  Element acc = id();
  while (n > 0) {
    if (n & 1) {
      acc = mul(acc, base);
    }
    n >>= 1;
    if (n > 0) {
      base = mul(base, base);
    }
  }
  return acc;
}

Element Group::commutatorOf(const Element& x, const Element& y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

Element Group::conjugateOf(const Element& x, const Element& s) const {
  return mul(mul(inv(s), x), s);
}

std::optional<std::int64_t> Group::elementOrder(const Element& x,
                                                std::int64_t cap) const {
  Element y = x;
  for (std::int64_t t = 1; t <= cap; ++t) {
    if (isId(y)) {
      return t;
    }
    y = mul(y, x);
  }
  return std::nullopt;
}

// --------------------------------------------------------------- FreeGroup

FreeGroup::FreeGroup(std::int32_t rank, std::vector<std::string> names)
    : rank_(rank), names_(std::move(names)) {
  if (rank_ < 0) {
    throw Error("free group rank must be nonnegative");
  }
  if (names_.empty()) {
    names_ = defaultNames("x", rank_);
  }
  if (static_cast<std::int32_t>(names_.size()) != rank_) {
    throw Error("free group needs one name per generator");
  }
}

std::string FreeGroup::describe() const {
  std::string out = "free(";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    out += (i ? "," : "") + names_[i];
  }
  return out + ")";
}

Element FreeGroup::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return Element::word(x.asWord() * y.asWord());
}

Element FreeGroup::inv(const Element& x) const {
  checkElement(x);
  return Element::word(x.asWord().inverse());
}

bool FreeGroup::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return x.asWord() == y.asWord();
}

std::string FreeGroup::key(const Element& x) const {
  return wordKey(x.asWord());
}

std::string FreeGroup::print(const Element& x) const {
  return printWord(x.asWord(), names_);
}

void FreeGroup::checkElement(const Element& x) const {
  if (x.asWord().maxGenerator() >= rank_) {
    throw Error("word uses a generator outside this free group");
  }
}

std::optional<std::uint64_t> FreeGroup::order() const {
  if (rank_ == 0) {
    return 1;
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, Element>> FreeGroup::generators() const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::int32_t g = 0; g < rank_; ++g) {
    gens.emplace_back(names_[static_cast<std::size_t>(g)],
                      Element::word(Word::generator(g)));
  }
  return gens;
}

std::optional<std::int64_t> FreeGroup::elementOrder(const Element& x,
                                                    std::int64_t) const {
  if (x.asWord().trivial()) {
    return 1;
  }
  return std::nullopt;
}

// ------------------------------------------------------------- CyclicGroup

CyclicGroup::CyclicGroup(std::int64_t n, std::string name)
    : n_(n), name_(std::move(name)) {
  if (n_ < 1) {
    throw Error("cyclic group order must be positive");
  }
}

std::string CyclicGroup::describe() const {
  return "cyclic(" + name_ + "," + std::to_string(n_) + ")";
}

Element CyclicGroup::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return Element::residue((x.asResidue() + y.asResidue()) % n_);
}

Element CyclicGroup::inv(const Element& x) const {
  checkElement(x);
  return Element::residue((n_ - x.asResidue()) % n_);
}

bool CyclicGroup::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return x.asResidue() == y.asResidue();
}

std::string CyclicGroup::key(const Element& x) const {
  return "c:" + std::to_string(x.asResidue());
}

std::string CyclicGroup::print(const Element& x) const {
  const std::int64_t r = x.asResidue();
  if (r == 0) {
    return "1";
  }
  if (r == 1) {
    return name_;
  }
  return name_ + "^" + std::to_string(r);
}

void CyclicGroup::checkElement(const Element& x) const {
  const std::int64_t r = x.asResidue();
  if (r < 0 || r >= n_) {
    throw Error("residue outside [0, n)");
  }
}

std::vector<std::pair<std::string, Element>> CyclicGroup::generators() const {
  if (n_ == 1) {
    return {};
  }
  return {{name_, Element::residue(1)}};
}

std::optional<std::int64_t> CyclicGroup::elementOrder(const Element& x,
                                                      std::int64_t) const {
  const std::int64_t r = x.asResidue();
  return n_ / std::gcd(n_, r == 0 ? n_ : r);
}

// ----------------------------------------------------------- DirectProduct

DirectProduct::DirectProduct(std::vector<GroupHandle> factors)
    : factors_(std::move(factors)) {
  if (factors_.empty()) {
    throw Error("direct product needs at least one factor");
  }
  for (const auto& f : factors_) {
    if (!f) {
      throw Error("null factor handle");
    }
  }
}

std::string DirectProduct::describe() const {
  std::string out = "direct(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += (i ? "," : "") + factors_[i]->describe();
  }
  return out + ")";
}

Element DirectProduct::id() const {
  std::vector<Element> parts;
  parts.reserve(factors_.size());
  for (const auto& f : factors_) {
    parts.push_back(f->id());
  }
  return Element::tuple(std::move(parts));
}

Element DirectProduct::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  std::vector<Element> parts;
  parts.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    parts.push_back(factors_[i]->mul(x.asTuple()[i], y.asTuple()[i]));
  }
  return Element::tuple(std::move(parts));
}

Element DirectProduct::inv(const Element& x) const {
  checkElement(x);
  std::vector<Element> parts;
  parts.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    parts.push_back(factors_[i]->inv(x.asTuple()[i]));
  }
  return Element::tuple(std::move(parts));
}

bool DirectProduct::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!factors_[i]->equal(x.asTuple()[i], y.asTuple()[i])) {
      return false;
    }
  }
  return true;
}

std::string DirectProduct::key(const Element& x) const {
  std::string out = "d";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += "(" + factors_[i]->key(x.asTuple()[i]) + ")";
  }
  return out;
}

bool DirectProduct::canonicalKeys() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const auto& f) { return f->canonicalKeys(); });
}

std::string DirectProduct::invariantKey(const Element& x) const {
  std::string out = "d";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += "(" + factors_[i]->invariantKey(x.asTuple()[i]) + ")";
  }
  return out;
}

std::string DirectProduct::print(const Element& x) const {
  std::string out = "(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += (i ? ", " : "") + factors_[i]->print(x.asTuple()[i]);
  }
  return out + ")";
}

void DirectProduct::checkElement(const Element& x) const {
  if (x.asTuple().size() != factors_.size()) {
    throw Error("tuple arity does not match the direct product");
  }
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    factors_[i]->checkElement(x.asTuple()[i]);
  }
}

bool DirectProduct::abelian() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const auto& f) { return f->abelian(); });
}

std::optional<std::uint64_t> DirectProduct::order() const {
  std::uint64_t n = 1;
  for (const auto& f : factors_) {
    const auto fo = f->order();
    if (!fo) {
      return std::nullopt;
    }
    n *= *fo;
  }
  return n;
}

std::vector<std::pair<std::string, Element>> DirectProduct::generators()
    const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const auto& [name, g] : factors_[i]->generators()) {
      std::vector<Element> parts;
      for (std::size_t j = 0; j < factors_.size(); ++j) {
        parts.push_back(i == j ? g : factors_[j]->id());
      }
      gens.emplace_back(name, Element::tuple(std::move(parts)));
    }
  }
  return gens;
}

// ------------------------------------------------------- SemidirectProduct

SemidirectProduct::SemidirectProduct(std::int32_t freeRank,
                                     std::vector<std::string> freeNames,
                                     std::int64_t actingOrder,
                                     std::string actingName,
                                     std::vector<Word> actionImages)
    : freeRank_(freeRank),
      freeNames_(std::move(freeNames)),
      order_(actingOrder),
      actingName_(std::move(actingName)) {
  if (freeRank_ < 0 || order_ < 1) {
    throw Error("semidirect product needs rank >= 0 and acting order >= 1");
  }
  if (freeNames_.empty()) {
    freeNames_ = defaultNames("x", freeRank_);
  }
  if (static_cast<std::int32_t>(freeNames_.size()) != freeRank_ ||
      static_cast<std::int32_t>(actionImages.size()) != freeRank_) {
    throw Error("semidirect product needs one name and one action image per "
                "free generator");
  }
  for (const Word& img : actionImages) {
    if (img.maxGenerator() >= freeRank_) {
      throw Error("action image uses a generator outside the free part");
    }
  }
  images_.resize(static_cast<std::size_t>(order_));
  auto& id0 = images_[0];
  for (std::int32_t g = 0; g < freeRank_; ++g) {
    id0.push_back(Word::generator(g));
  }
  if (order_ > 1) {
    images_[1] = std::move(actionImages);
  }
  auto applyOnce = [this](const Word& w) {
    return substitute(w, [this](std::int32_t g) {
      return images_[1][static_cast<std::size_t>(g)];
    });
  };
  for (std::int64_t k = 2; k < order_; ++k) {
    for (std::int32_t g = 0; g < freeRank_; ++g) {
      images_[static_cast<std::size_t>(k)].push_back(
          applyOnce(images_[static_cast<std::size_t>(k - 1)]
                            [static_cast<std::size_t>(g)]));
    }
  }
  // The action must extend to an automorphism of order dividing `order_`.
  if (order_ > 1) {
    for (std::int32_t g = 0; g < freeRank_; ++g) {
      const Word back = applyOnce(
          images_[static_cast<std::size_t>(order_ - 1)]
                 [static_cast<std::size_t>(g)]);
      if (back != Word::generator(g)) {
        throw Error("action does not have finite order dividing the acting "
                    "group's order");
      }
    }
  }
}

Word SemidirectProduct::actionPow(std::int64_t k, const Word& w) const {
  k = ((k % order_) + order_) % order_;
  if (k == 0) {
    return w;
  }
  const auto& imgs = images_[static_cast<std::size_t>(k)];
  return substitute(
      w, [&imgs](std::int32_t g) { return imgs[static_cast<std::size_t>(g)]; });
}

std::string SemidirectProduct::describe() const {
  std::string out = "semidirect(free(";
  for (std::size_t i = 0; i < freeNames_.size(); ++i) {
    out += (i ? "," : "") + freeNames_[i];
  }
  out += "),cyclic(" + actingName_ + "," + std::to_string(order_) +
         "),action{";
  for (std::size_t i = 0; i < freeNames_.size(); ++i) {
    out += (i ? "," : "") + freeNames_[i] + "->" +
           (order_ > 1 ? printWord(images_[1][i], freeNames_)
                       : freeNames_[i]);
  }
  return out + "})";
}

Element SemidirectProduct::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  const auto& a = x.asSemi();
  const auto& b = y.asSemi();
  return Element::semi(a.word * actionPow(a.residue, b.word),
                       (a.residue + b.residue) % order_);
}

Element SemidirectProduct::inv(const Element& x) const {
  checkElement(x);
  const auto& a = x.asSemi();
  const std::int64_t e = (order_ - a.residue) % order_;
  return Element::semi(actionPow(e, a.word.inverse()), e);
}

bool SemidirectProduct::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return x.asSemi() == y.asSemi();
}

std::string SemidirectProduct::key(const Element& x) const {
  const auto& a = x.asSemi();
  return "s:" + std::to_string(a.residue) + ":" + wordKey(a.word);
}

std::string SemidirectProduct::print(const Element& x) const {
  const auto& a = x.asSemi();
  std::string acting = a.residue == 0 ? "1"
                       : a.residue == 1
                           ? actingName_
                           : actingName_ + "^" + std::to_string(a.residue);
  return "(" + printWord(a.word, freeNames_) + ", " + acting + ")";
}

void SemidirectProduct::checkElement(const Element& x) const {
  const auto& a = x.asSemi();
  if (a.residue < 0 || a.residue >= order_) {
    throw Error("acting residue outside [0, order)");
  }
  if (a.word.maxGenerator() >= freeRank_) {
    throw Error("free part uses a generator outside this group");
  }
}

bool SemidirectProduct::abelian() const {
  if (freeRank_ == 0) {
    return true;
  }
  if (freeRank_ > 1) {
    return false;
  }
  return order_ == 1 || images_[1][0] == Word::generator(0);
}

std::vector<std::pair<std::string, Element>> SemidirectProduct::generators()
    const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::int32_t g = 0; g < freeRank_; ++g) {
    gens.emplace_back(freeNames_[static_cast<std::size_t>(g)],
                      Element::semi(Word::generator(g), 0));
  }
  if (order_ > 1) {
    gens.emplace_back(actingName_, Element::semi(Word(), 1));
  }
  return gens;
}

std::optional<std::int64_t> SemidirectProduct::elementOrder(
    const Element& x, std::int64_t) const {
  checkElement(x);
  const auto& a = x.asSemi();
  if (a.residue == 0) {
    return a.word.trivial() ? std::optional<std::int64_t>(1) : std::nullopt;
  }
  // (w, a^e)^d lands in the free part at d = order of e; torsion there is
  // trivial, so the order is d exactly when that power collapses.
  const std::int64_t d = order_ / std::gcd(order_, a.residue);
  const Element p = power(x, d);
  if (p.asSemi().word.trivial()) {
    return d;
  }
  return std::nullopt;
}

// ---------------------------------------------------------- FreeProduct

FreeProductGroup::FreeProductGroup(std::vector<GroupHandle> factors)
    : factors_(std::move(factors)) {
  if (factors_.size() < 2) {
    throw Error("free product needs at least two factors");
  }
  for (const auto& f : factors_) {
    if (!f) {
      throw Error("null factor handle");
    }
    if (const auto* c = dynamic_cast<const CyclicGroup*>(f.get())) {
      if (c->modulus() < 2) {
        throw Error("free product factors must be non-trivial");
      }
    } else if (const auto* fr = dynamic_cast<const FreeGroup*>(f.get())) {
      if (fr->rank() < 1) {
        throw Error("free product factors must be non-trivial");
      }
    } else {
      throw Error("free product factors must be free or finite cyclic");
    }
  }
  direct_ = std::make_shared<DirectProduct>(factors_);
}

bool FreeProductGroup::syllableTrivial(const FPSyllable& s) const {
  if (const auto* w = std::get_if<Word>(&s.value)) {
    return w->trivial();
  }
  return std::get<std::int64_t>(s.value) == 0;
}

FPSyllable FreeProductGroup::syllableMul(const FPSyllable& a,
                                         const FPSyllable& b) const {
  FPSyllable out;
  out.factor = a.factor;
  if (const auto* w = std::get_if<Word>(&a.value)) {
    out.value = *w * std::get<Word>(b.value);
  } else {
    const auto* c = dynamic_cast<const CyclicGroup*>(
        factors_[static_cast<std::size_t>(a.factor)].get());
    out.value = (std::get<std::int64_t>(a.value) +
                 std::get<std::int64_t>(b.value)) %
                c->modulus();
  }
  return out;
}

FPSyllable FreeProductGroup::syllableInv(const FPSyllable& s) const {
  FPSyllable out;
  out.factor = s.factor;
  if (const auto* w = std::get_if<Word>(&s.value)) {
    out.value = w->inverse();
  } else {
    const auto* c = dynamic_cast<const CyclicGroup*>(
        factors_[static_cast<std::size_t>(s.factor)].get());
    out.value = (c->modulus() - std::get<std::int64_t>(s.value)) %
                c->modulus();
  }
  return out;
}

Element FreeProductGroup::fromSyllables(
    const std::vector<FPSyllable>& raw) const {
  std::vector<FPSyllable> stack;
  for (const FPSyllable& s : raw) {
    if (syllableTrivial(s)) {
      continue;
    }
    FPSyllable cur = s;
    while (!stack.empty() && stack.back().factor == cur.factor) {
      cur = syllableMul(stack.back(), cur);
      stack.pop_back();
      if (syllableTrivial(cur)) {
        break;
      }
    }
    if (!syllableTrivial(cur)) {
      stack.push_back(cur);
    }
  }
  return Element::syllables(std::move(stack));
}

std::string FreeProductGroup::describe() const {
  std::string out = "freeproduct(";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out += (i ? "," : "") + factors_[i]->describe();
  }
  return out + ")";
}

Element FreeProductGroup::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  std::vector<FPSyllable> cat = x.asSyllables();
  cat.insert(cat.end(), y.asSyllables().begin(), y.asSyllables().end());
  return fromSyllables(cat);
}

Element FreeProductGroup::inv(const Element& x) const {
  checkElement(x);
  std::vector<FPSyllable> out;
  const auto& syls = x.asSyllables();
  out.reserve(syls.size());
  for (auto it = syls.rbegin(); it != syls.rend(); ++it) {
    out.push_back(syllableInv(*it));
  }
  return Element::syllables(std::move(out));
}

bool FreeProductGroup::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return x.asSyllables() == y.asSyllables();
}

std::string FreeProductGroup::key(const Element& x) const {
  std::string out = "p";
  for (const auto& s : x.asSyllables()) {
    out += "[" + std::to_string(s.factor) + ":";
    if (const auto* w = std::get_if<Word>(&s.value)) {
      out += wordKey(*w);
    } else {
      out += std::to_string(std::get<std::int64_t>(s.value));
    }
    out += "]";
  }
  return out;
}

std::string FreeProductGroup::print(const Element& x) const {
  const auto& syls = x.asSyllables();
  if (syls.empty()) {
    return "1";
  }
  std::string out;
  for (const auto& s : syls) {
    if (!out.empty()) {
      out += "*";
    }
    const auto& f = factors_[static_cast<std::size_t>(s.factor)];
    if (const auto* w = std::get_if<Word>(&s.value)) {
      out += f->print(Element::word(*w));
    } else {
      out += f->print(Element::residue(std::get<std::int64_t>(s.value)));
    }
  }
  return out;
}

void FreeProductGroup::checkElement(const Element& x) const {
  const auto& syls = x.asSyllables();
  for (std::size_t i = 0; i < syls.size(); ++i) {
    const auto& s = syls[i];
    if (s.factor < 0 ||
        s.factor >= static_cast<std::int32_t>(factors_.size())) {
      throw Error("syllable factor index out of range");
    }
    if (syllableTrivial(s)) {
      throw Error("trivial syllable in normal form");
    }
    if (i > 0 && syls[i - 1].factor == s.factor) {
      throw Error("adjacent syllables from the same factor");
    }
    const auto& f = factors_[static_cast<std::size_t>(s.factor)];
    if (const auto* w = std::get_if<Word>(&s.value)) {
      f->checkElement(Element::word(*w));
    } else {
      f->checkElement(Element::residue(std::get<std::int64_t>(s.value)));
    }
  }
}

std::vector<std::pair<std::string, Element>> FreeProductGroup::generators()
    const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    for (const auto& [name, g] : factors_[i]->generators()) {
      FPSyllable s;
      s.factor = static_cast<std::int32_t>(i);
      if (dynamic_cast<const FreeGroup*>(factors_[i].get())) {
        s.value = g.asWord();
      } else {
        s.value = g.asResidue();
      }
      gens.emplace_back(name, Element::syllables({s}));
    }
  }
  return gens;
}

Element FreeProductGroup::projectToDirect(const Element& x) const {
  checkElement(x);
  std::vector<Element> parts;
  for (const auto& f : factors_) {
    parts.push_back(f->id());
  }
  for (const auto& s : x.asSyllables()) {
    const std::size_t i = static_cast<std::size_t>(s.factor);
    Element val = std::holds_alternative<Word>(s.value)
                      ? Element::word(std::get<Word>(s.value))
                      : Element::residue(std::get<std::int64_t>(s.value));
    parts[i] = factors_[i]->mul(parts[i], val);
  }
  return Element::tuple(std::move(parts));
}

// ----------------------------------------------------- RationalVectorGroup

RationalVectorGroup::RationalVectorGroup(std::int32_t dim) : dim_(dim) {
  if (dim_ < 1) {
    throw Error("rational vector group needs dimension >= 1");
  }
}

std::string RationalVectorGroup::describe() const {
  return "rational(" + std::to_string(dim_) + ")";
}

Element RationalVectorGroup::id() const {
  return Element::rationals(
      std::vector<Rational>(static_cast<std::size_t>(dim_)));
}

Element RationalVectorGroup::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(dim_));
  for (std::int32_t i = 0; i < dim_; ++i) {
    out.push_back(x.asRationals()[static_cast<std::size_t>(i)] +
                  y.asRationals()[static_cast<std::size_t>(i)]);
  }
  return Element::rationals(std::move(out));
}

Element RationalVectorGroup::inv(const Element& x) const {
  checkElement(x);
  std::vector<Rational> out;
  for (const auto& q : x.asRationals()) {
    out.push_back(-q);
  }
  return Element::rationals(std::move(out));
}

bool RationalVectorGroup::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return x.asRationals() == y.asRationals();
}

std::string RationalVectorGroup::key(const Element& x) const {
  std::string out = "q";
  for (const auto& q : x.asRationals()) {
    out += ":" + q.str();
  }
  return out;
}

std::string RationalVectorGroup::print(const Element& x) const {
  std::string out = "(";
  const auto& qs = x.asRationals();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    out += (i ? ", " : "") + qs[i].str();
  }
  return out + ")";
}

void RationalVectorGroup::checkElement(const Element& x) const {
  if (static_cast<std::int32_t>(x.asRationals().size()) != dim_) {
    throw Error("rational vector has wrong dimension");
  }
}

std::vector<std::pair<std::string, Element>> RationalVectorGroup::generators()
    const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::int32_t i = 0; i < dim_; ++i) {
    std::vector<Rational> coords(static_cast<std::size_t>(dim_));
    coords[static_cast<std::size_t>(i)] = Rational(1);
    gens.emplace_back("q" + std::to_string(i + 1),
                      Element::rationals(std::move(coords)));
  }
  return gens;
}

std::optional<std::int64_t> RationalVectorGroup::elementOrder(
    const Element& x, std::int64_t) const {
  return isId(x) ? std::optional<std::int64_t>(1) : std::nullopt;
}

// -------------------------------------------------------------- Surface

SurfaceGroup::SurfaceGroup(bool orientable, std::int32_t genus)
    : genus_(genus) {
  if (!orientable) {
    throw Error("non-orientable surface word problem is not implemented");
  }
  if (genus_ < 2) {
    throw Error("surface word problem needs orientable genus >= 2");
  }
  for (std::int32_t i = 1; i <= genus_; ++i) {
    names_.push_back("x" + std::to_string(i));
    names_.push_back("y" + std::to_string(i));
  }
  Word r;
  for (std::int32_t i = 0; i < genus_; ++i) {
    r = r * commutator(Word::generator(2 * i), Word::generator(2 * i + 1));
  }
  relator_ = r;
  half_ = relator_.length() / 2;
  for (const Word& base : {relator_, relator_.inverse()}) {
    const std::vector<Letter> ls = base.letters();
    for (std::size_t j = 0; j < ls.size(); ++j) {
      std::vector<Letter> rot(ls.begin() + static_cast<std::ptrdiff_t>(j),
                              ls.end());
      rot.insert(rot.end(), ls.begin(),
                 ls.begin() + static_cast<std::ptrdiff_t>(j));
      variants_.push_back(std::move(rot));
    }
  }
}

namespace {

void freeReduceLetters(std::vector<Letter>& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (const Letter& l : w) {
    if (!stack.empty() && stack.back().gen == l.gen &&
        stack.back().sign == -l.sign) {
      stack.pop_back();
    } else {
      stack.push_back(l);
    }
  }
  w = std::move(stack);
}

void cyclicReduceLetters(std::vector<Letter>& w) {
  std::size_t lo = 0;
  std::size_t hi = w.size();
  while (hi - lo >= 2 && w[lo].gen == w[hi - 1].gen &&
         w[lo].sign == -w[hi - 1].sign) {
    ++lo;
    --hi;
  }
  w = std::vector<Letter>(w.begin() + static_cast<std::ptrdiff_t>(lo),
                          w.begin() + static_cast<std::ptrdiff_t>(hi));
}

}  // namespace

// Finds the leftmost subword longer than half the relator that matches a
// relator variant and replaces it by the shorter complement. In cyclic
// mode the word is first rotated so a wraparound match starts at 0; that
// conjugates the element, which is fine for triviality testing only.
bool SurfaceGroup::findReplacement(std::vector<Letter>& w, bool cyclic) const {
  const std::int64_t rl = relator_.length();
  const std::int64_t len = static_cast<std::int64_t>(w.size());
  if (len <= half_) {
    return false;
  }
  const std::int64_t positions = cyclic ? len : len - half_;
  for (std::int64_t i = 0; i < positions; ++i) {
    std::int64_t bestLen = 0;
    std::size_t bestVar = 0;
    for (std::size_t v = 0; v < variants_.size(); ++v) {
      const auto& var = variants_[v];
      std::int64_t t = 0;
      const std::int64_t lim = std::min<std::int64_t>(rl, len);
      while (t < lim &&
             w[static_cast<std::size_t>((i + t) % len)] ==
                 var[static_cast<std::size_t>(t)]) {
        ++t;
      }
      if (t > bestLen) {
        bestLen = t;
        bestVar = v;
      }
    }
    if (bestLen > half_) {
      std::size_t start = static_cast<std::size_t>(i);
      if (cyclic && i + bestLen > len) {
        // rotate so the match is contiguous from 0
        std::vector<Letter> rot(w.begin() + static_cast<std::ptrdiff_t>(i),
                                w.end());
        rot.insert(rot.end(), w.begin(),
                   w.begin() + static_cast<std::ptrdiff_t>(i));
        w = std::move(rot);
        start = 0;
      }
      const auto& var = variants_[bestVar];
      std::vector<Letter> repl;
      // matched prefix equals the inverse of the variant's remainder
      for (std::int64_t t = rl - 1; t >= bestLen; --t) {
        const Letter& l = var[static_cast<std::size_t>(t)];
        repl.push_back({l.gen, -l.sign});
      }
      std::vector<Letter> out(w.begin(),
                              w.begin() + static_cast<std::ptrdiff_t>(start));
      out.insert(out.end(), repl.begin(), repl.end());
      out.insert(out.end(),
                 w.begin() + static_cast<std::ptrdiff_t>(start + bestLen),
                 w.end());
      freeReduceLetters(out);
      w = std::move(out);
      return true;
    }
  }
  return false;
}

Word SurfaceGroup::dehnReduceWord(Word w) const {
  std::vector<Letter> ls = w.letters();
  freeReduceLetters(ls);
  while (findReplacement(ls, /*cyclic=*/false)) {
  }
  return Word::fromLetters(ls);
}

bool SurfaceGroup::trivialWord(Word w) const {
  std::vector<Letter> ls = w.letters();
  freeReduceLetters(ls);
  for (;;) {
    cyclicReduceLetters(ls);
    if (ls.empty()) {
      return true;
    }
    if (static_cast<std::int64_t>(ls.size()) <= half_) {
      return false;
    }
    if (!findReplacement(ls, /*cyclic=*/true)) {
      return false;
    }
  }
}

std::string SurfaceGroup::describe() const {
  return "surface(orientable, genus=" + std::to_string(genus_) + ")";
}

Element SurfaceGroup::mul(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return Element::word(dehnReduceWord(x.asWord() * y.asWord()));
}

Element SurfaceGroup::inv(const Element& x) const {
  checkElement(x);
  return Element::word(x.asWord().inverse());
}

bool SurfaceGroup::equal(const Element& x, const Element& y) const {
  checkElement(x);
  checkElement(y);
  return trivialWord(x.asWord() * y.asWord().inverse());
}

std::string SurfaceGroup::key(const Element& x) const {
  return wordKey(x.asWord());
}

std::string SurfaceGroup::invariantKey(const Element& x) const {
  return exponentKey(exponentVector(x.asWord()));
}

std::string SurfaceGroup::print(const Element& x) const {
  return printWord(x.asWord(), names_);
}

void SurfaceGroup::checkElement(const Element& x) const {
  if (x.asWord().maxGenerator() >= 2 * genus_) {
    throw Error("word uses a generator outside this surface group");
  }
}

std::vector<std::pair<std::string, Element>> SurfaceGroup::generators()
    const {
  std::vector<std::pair<std::string, Element>> gens;
  for (std::int32_t g = 0; g < 2 * genus_; ++g) {
    gens.emplace_back(names_[static_cast<std::size_t>(g)],
                      Element::word(Word::generator(g)));
  }
  return gens;
}

std::optional<std::int64_t> SurfaceGroup::elementOrder(const Element& x,
                                                       std::int64_t) const {
  // torsion-free for genus >= 2
  return isId(x) ? std::optional<std::int64_t>(1) : std::nullopt;
}

// ----------------------------------------------------------- constructors

GroupHandle makeFree(std::int32_t rank, std::vector<std::string> names) {
  return std::make_shared<FreeGroup>(rank, std::move(names));
}

GroupHandle makeCyclic(std::int64_t n, std::string name) {
  return std::make_shared<CyclicGroup>(n, std::move(name));
}

GroupHandle makeDirect(std::vector<GroupHandle> factors) {
  return std::make_shared<DirectProduct>(std::move(factors));
}

GroupHandle makeSemidirect(std::int32_t freeRank,
                           std::vector<std::string> freeNames,
                           std::int64_t actingOrder, std::string actingName,
                           std::vector<Word> actionImages) {
  return std::make_shared<SemidirectProduct>(
      freeRank, std::move(freeNames), actingOrder, std::move(actingName),
      std::move(actionImages));
}

GroupHandle makeFreeProduct(std::vector<GroupHandle> factors) {
  return std::make_shared<FreeProductGroup>(std::move(factors));
}

GroupHandle makeRationalVector(std::int32_t dim) {
  return std::make_shared<RationalVectorGroup>(dim);
}

GroupHandle makeSurface(bool orientable, std::int32_t genus) {
  return std::make_shared<SurfaceGroup>(orientable, genus);
}

// -------------------------------------------------------------------- ball

namespace {
constexpr std::size_t kBallLimit = 2'000'000;
}

Ball ball(const Group& G, const std::vector<Element>& U, int radius,
          bool probeExhaustive) {
  if (radius < 0) {
    throw Error("ball radius must be nonnegative");
  }
  if (dynamic_cast<const RationalVectorGroup*>(&G) && radius >= 1) {
    for (const auto& u : U) {
      if (!G.isId(u)) {
        throw Error("rational vector balls are infinite under non-identity "
                    "generators; enumeration unsupported");
      }
    }
  }
  for (const auto& u : U) {
    G.checkElement(u);
  }

  const bool canon = G.canonicalKeys();
  Ball out;
  std::unordered_set<std::string> seen;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;

  auto contains = [&](const Element& x) {
    if (canon) {
      return seen.count(G.key(x)) > 0;
    }
    const auto it = buckets.find(G.invariantKey(x));
    if (it == buckets.end()) {
      return false;
    }
    for (const std::size_t idx : it->second) {
      if (G.equal(out.elements[idx], x)) {
        return true;
      }
    }
    return false;
  };
  auto registerElement = [&](const Element& x, int depth) {
    if (canon) {
      seen.insert(G.key(x));
    } else {
      buckets[G.invariantKey(x)].push_back(out.elements.size());
    }
    out.elements.push_back(x);
    out.depths.push_back(depth);
  };

  struct LayerEntry {
    std::string sortKey;
    std::string invKey;
    Element element;
  };
  // One BFS layer from [from, to); returns new elements sorted by key.
  auto expand = [&](std::size_t from, std::size_t to) {
    std::vector<LayerEntry> layer;
    std::unordered_map<std::string, std::vector<std::size_t>> layerBuckets;
    auto inLayer = [&](const std::string& ik, const Element& x) {
      const auto it = layerBuckets.find(ik);
      if (it == layerBuckets.end()) {
        return false;
      }
      for (const std::size_t idx : it->second) {
        if (canon || G.equal(layer[idx].element, x)) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t i = from; i < to; ++i) {
      for (const auto& u : U) {
        Element x = G.mul(out.elements[i], u);
        const std::string ik = canon ? G.key(x) : G.invariantKey(x);
        if (contains(x) || inLayer(ik, x)) {
          continue;
        }
        layerBuckets[ik].push_back(layer.size());
        layer.push_back({G.key(x), ik, std::move(x)});
        if (out.elements.size() + layer.size() > kBallLimit) {
          throw Error("ball enumeration exceeded the element limit");
        }
      }
    }
    std::sort(layer.begin(), layer.end(), [](const auto& a, const auto& b) {
      return a.sortKey < b.sortKey;
    });
    return layer;
  };

  registerElement(G.id(), 0);
  std::size_t levelBegin = 0;
  for (int d = 1; d <= radius; ++d) {
    const std::size_t levelEnd = out.elements.size();
    auto layer = expand(levelBegin, levelEnd);
    if (layer.empty()) {
      out.exhaustive = true;
      return out;
    }
    for (auto& le : layer) {
      registerElement(le.element, d);
    }
    levelBegin = levelEnd;
  }
  if (probeExhaustive && !out.exhaustive) {
    out.exhaustive = expand(levelBegin, out.elements.size()).empty();
  }
  return out;
}

bool ElementDedup::insert(const Element& x) {
  if (canon_) {
    return keys_.insert(G_.key(x)).second;
  }
  auto& bucket = buckets_[G_.invariantKey(x)];
  for (const Element& e : bucket) {
    if (G_.equal(e, x)) {
      return false;
    }
  }
  bucket.push_back(x);
  return true;
}

std::vector<Element> symmetrize(const Group& G, std::vector<Element> U) {
  std::vector<Element> out;
  auto known = [&](const Element& x) {
    for (const auto& e : out) {
      if (G.equal(e, x)) {
        return true;
      }
    }
    return false;
  };
  for (const auto& u : U) {
    if (!known(u)) {
      out.push_back(u);
    }
    Element v = G.inv(u);
    if (!known(v)) {
      out.push_back(std::move(v));
    }
  }
  return out;
}

// ---------------------------------------------------- surface common roots

namespace {

std::optional<std::int64_t> findSurfacePower(const SurfaceGroup& G,
                                             const Element& u,
                                             const Element& g,
                                             std::int64_t kBound) {
  const ExponentVector evU = exponentVector(u.asWord());
  const ExponentVector evG = exponentVector(g.asWord());
  if (!evU.empty()) {
    // k is pinned by any nonzero exponent coordinate.
    const auto [gen, e] = *evU.begin();
    const auto it = evG.find(gen);
    const std::int64_t target = it == evG.end() ? 0 : it->second;
    if (target % e != 0) {
      return std::nullopt;
    }
    const std::int64_t k = target / e;
    if (k != 0 && G.equal(G.power(u, k), g)) {
      return k;
    }
    return std::nullopt;
  }
  if (!evG.empty()) {
    return std::nullopt;
  }
  for (std::int64_t k = 1; k <= kBound; ++k) {
    if (G.equal(G.power(u, k), g)) {
      return k;
    }
    if (G.equal(G.power(u, -k), g)) {
      return -k;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<CommonRoot> surfaceCommuteCyclic(const SurfaceGroup& G,
                                               const Element& g1,
                                               const Element& g2,
                                               int searchRadius) {
  if (G.isId(g1) || G.isId(g2)) {
    throw Error("common root search needs non-trivial inputs");
  }
  if (!G.isId(G.commutatorOf(g1, g2))) {
    throw Error("common root search needs commuting inputs");
  }
  const std::int64_t l1 = g1.asWord().length();
  const std::int64_t l2 = g2.asWord().length();
  if (searchRadius <= 0) {
    searchRadius = static_cast<int>(std::max<std::int64_t>({l1, l2, 2}));
  }
  const std::int64_t kBound = std::max<std::int64_t>(8, l1 + l2);

  std::vector<Element> U;
  for (const auto& [name, g] : G.generators()) {
    U.push_back(g);
  }
  const Ball B = ball(G, symmetrize(G, U), searchRadius,
                      /*probeExhaustive=*/false);
  for (const Element& u : B.elements) {
    if (G.isId(u)) {
      continue;
    }
    const auto k1 = findSurfacePower(G, u, g1, kBound);
    if (!k1) {
      continue;
    }
    const auto k2 = findSurfacePower(G, u, g2, kBound);
    if (!k2) {
      continue;
    }
    return CommonRoot{u, *k1, *k2};
  }
  return std::nullopt;
}

}  // namespace gew
