#include "gew/freewords.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <ostream>

namespace gew {

void Word::appendReduced(std::int32_t gen, std::int64_t exp) {
  if (exp == 0) {
    return;
  }
  if (!syls_.empty() && syls_.back().gen == gen) {
    syls_.back().exp += exp;
    if (syls_.back().exp == 0) {
      syls_.pop_back();
    }
    return;
  }
  syls_.push_back({gen, exp});
}

Word Word::generator(std::int32_t gen, std::int64_t exp) {
  Word w;
  w.appendReduced(gen, exp);
  return w;
}

Word Word::fromLetters(std::span<const Letter> letters) {
  Word w;
  for (const auto& l : letters) {
    if (l.sign != 1 && l.sign != -1) {
      throw Error("letter sign must be +1 or -1");
    }
    w.appendReduced(l.gen, l.sign);
  }
  return w;
}

Word Word::fromSyllables(std::span<const Syllable> syllables) {
  Word w;
  for (const auto& s : syllables) {
    w.appendReduced(s.gen, s.exp);
  }
  return w;
}

std::int64_t Word::length() const {
  std::int64_t n = 0;
  for (const auto& s : syls_) {
    n += std::abs(s.exp);
  }
  return n;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(length()));
  for (const auto& s : syls_) {
    const int sign = s.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < std::abs(s.exp); ++i) {
      out.push_back({s.gen, sign});
    }
  }
  return out;
}

std::int32_t Word::maxGenerator() const {
  std::int32_t m = -1;
  for (const auto& s : syls_) {
    m = std::max(m, s.gen);
  }
  return m;
}

Word Word::inverse() const {
  Word w;
  w.syls_.reserve(syls_.size());
  for (auto it = syls_.rbegin(); it != syls_.rend(); ++it) {
    w.syls_.push_back({it->gen, -it->exp});
  }
  return w;
}

Word operator*(const Word& u, const Word& v) {
  Word w = u;
  for (const auto& s : v.syls_) {
    w.appendReduced(s.gen, s.exp);
  }
  return w;
}

Word Word::pow(std::int64_t k) const {
  if (k == 0) {
    return Word();
  }
  Word base = k > 0 ? *this : inverse();
  std::int64_t n = std::abs(k);
  if (syls_.size() == 1) {
    return Word::generator(syls_[0].gen, syls_[0].exp * k);
  }
  Word acc;
  while (n > 0) {
    if (n & 1) {
      acc = acc * base;
    }
    n >>= 1;
    if (n > 0) {
      base = base * base;
    }
  }
  return acc;
}

namespace {

// Letter codes order generators as g < g^-1 < h < h^-1 < ...
std::int64_t letterCode(std::int32_t gen, std::int64_t exp) {
  return 2 * static_cast<std::int64_t>(gen) + (exp < 0 ? 1 : 0);
}

}  // namespace

bool shortlexLess(const Word& u, const Word& v) {
  const std::int64_t lu = u.length();
  const std::int64_t lv = v.length();
  if (lu != lv) {
    return lu < lv;
  }
  // Walk runs of equal letters in lockstep.
  std::size_t i = 0;
  std::size_t j = 0;
  std::int64_t ri = 0;
  std::int64_t rj = 0;
  const auto& su = u.syllables();
  const auto& sv = v.syllables();
  while (i < su.size() && j < sv.size()) {
    const std::int64_t cu = letterCode(su[i].gen, su[i].exp);
    const std::int64_t cv = letterCode(sv[j].gen, sv[j].exp);
    if (cu != cv) {
      return cu < cv;
    }
    const std::int64_t ni = std::abs(su[i].exp) - ri;
    const std::int64_t nj = std::abs(sv[j].exp) - rj;
    const std::int64_t step = std::min(ni, nj);
    ri += step;
    rj += step;
    if (ri == std::abs(su[i].exp)) {
      ++i;
      ri = 0;
    }
    if (rj == std::abs(sv[j].exp)) {
      ++j;
      rj = 0;
    }
  }
  return false;
}

Word conjugate(const Word& u, const Word& s) { return s.inverse() * u * s; }

Word commutator(const Word& u, const Word& v) {
  return u.inverse() * v.inverse() * u * v;
}

Word leftNormedCommutator(std::span<const Word> ws) {
  if (ws.size() < 2) {
    throw Error("left-normed commutator needs at least two entries");
  }
  Word acc = commutator(ws[0], ws[1]);
  for (std::size_t i = 2; i < ws.size(); ++i) {
    acc = commutator(acc, ws[i]);
  }
  return acc;
}

Word substitute(const Word& w,
                const std::function<Word(std::int32_t)>& image) {
  Word out;
  for (const auto& s : w.syllables()) {
    out = out * image(s.gen).pow(s.exp);
  }
  return out;
}

ExponentVector exponentVector(const Word& w) {
  ExponentVector ev;
  for (const auto& s : w.syllables()) {
    ev[s.gen] += s.exp;
  }
  std::erase_if(ev, [](const auto& kv) { return kv.second == 0; });
  return ev;
}

bool isInDerived(const Word& w) { return exponentVector(w).empty(); }

ExponentVector addExponents(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector ev = a;
  for (const auto& [g, e] : b) {
    ev[g] += e;
    if (ev[g] == 0) {
      ev.erase(g);
    }
  }
  return ev;
}

CyclicForm cyclicReduce(const Word& w) {
  std::vector<Syllable> syls = w.syllables();
  Word prefix;
  while (syls.size() >= 2) {
    Syllable& front = syls.front();
    Syllable& back = syls.back();
    if (front.gen != back.gen || (front.exp > 0) == (back.exp > 0)) {
      break;
    }
    const std::int64_t t = std::min(std::abs(front.exp), std::abs(back.exp));
    const std::int64_t strip = front.exp > 0 ? t : -t;
    prefix = prefix * Word::generator(front.gen, strip);
    front.exp -= strip;
    back.exp += strip;
    if (back.exp == 0) {
      syls.pop_back();
    }
    if (front.exp == 0) {
      syls.erase(syls.begin());
    }
  }
  CyclicForm cf;
  cf.core = Word::fromSyllables(syls);
  cf.prefix = prefix;
  return cf;
}

namespace {

Word rotation(const std::vector<Letter>& letters, std::size_t j) {
  std::vector<Letter> rot(letters.begin() + static_cast<std::ptrdiff_t>(j),
                          letters.end());
  rot.insert(rot.end(), letters.begin(),
             letters.begin() + static_cast<std::ptrdiff_t>(j));
  return Word::fromLetters(rot);
}

}  // namespace

Word cyclicNormalForm(const Word& w) {
  const Word core = cyclicReduce(w).core;
  if (core.trivial()) {
    return core;
  }
  Word best = core;
  const std::vector<Letter> ls = core.letters();
  for (std::size_t j = 1; j < ls.size(); ++j) {
    Word cand = rotation(ls, j);
    if (shortlexLess(cand, best)) {
      best = cand;
    }
  }
  return best;
}

Root primitiveRoot(const Word& w) {
  if (w.trivial()) {
    throw Error("primitive root of the identity is undefined");
  }
  const CyclicForm cf = cyclicReduce(w);
  const std::vector<Letter> ls = cf.core.letters();
  const std::int64_t n = static_cast<std::int64_t>(ls.size());
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d != 0) {
      continue;
    }
    bool periodic = true;
    for (std::int64_t i = d; i < n && periodic; ++i) {
      periodic = ls[static_cast<std::size_t>(i)] ==
                 ls[static_cast<std::size_t>(i - d)];
    }
    if (periodic) {
      const Word rootCore = Word::fromLetters(
          std::span<const Letter>(ls.data(), static_cast<std::size_t>(d)));
      Root r;
      r.root = cf.prefix * rootCore * cf.prefix.inverse();
      r.exponent = n / d;
      return r;
    }
  }
  throw Error("unreachable: every word is a power of itself");
}

std::vector<Word> freeBall(std::int32_t rank, int radius) {
  if (rank < 0) {
    throw Error("free ball needs a nonnegative rank");
  }
  std::vector<Word> out;
  out.push_back(Word());
  std::size_t levelBegin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t levelEnd = out.size();
    for (std::size_t i = levelBegin; i < levelEnd; ++i) {
      for (std::int32_t g = 0; g < rank; ++g) {
        for (int sign : {1, -1}) {
          const Word w = out[i] * Word::generator(g, sign);
          if (w.length() == r) {
            out.push_back(w);
          }
        }
      }
    }
    levelBegin = levelEnd;
  }
  return out;
}

std::vector<Word> ballCentralizer(const Word& w, int radius,
                                  std::int32_t rank) {
  if (w.trivial()) {
    throw Error("ball centralizer of the identity is the whole ball");
  }
  if (rank <= 0) {
    rank = std::max<std::int32_t>(2, w.maxGenerator() + 1);
  }
  std::vector<Word> out;
  for (const Word& x : freeBall(rank, radius)) {
    if (x * w == w * x) {
      out.push_back(x);
    }
  }
  return out;
}

bool conjugateInFree(const Word& u, const Word& v) {
  return cyclicNormalForm(u) == cyclicNormalForm(v);
}

std::optional<Word> conjugatorInFree(const Word& u, const Word& v) {
  const CyclicForm cu = cyclicReduce(u);
  const CyclicForm cv = cyclicReduce(v);
  if (cu.core.length() != cv.core.length()) {
    return std::nullopt;
  }
  if (cu.core.trivial()) {
    return Word();
  }
  const std::vector<Letter> ls = cu.core.letters();
  for (std::size_t j = 0; j < ls.size(); ++j) {
    if (rotation(ls, j) == cv.core) {
      // core^t = rotation by j where t is the length-j prefix of the core.
      const Word t = Word::fromLetters(
          std::span<const Letter>(ls.data(), j));
      return cu.prefix * t * cv.prefix.inverse();
    }
  }
  return std::nullopt;
}

ConjugationPowerSolutions solveConjugationPower(const Word& p, const Word& r,
                                                const Word& q) {
  if (r.trivial()) {
    throw Error("conjugation power base must be nontrivial");
  }
  ConjugationPowerSolutions sol;
  if (conjugate(p, r) == p) {
    sol.allOf = (p == q);
    return sol;
  }
  // Normalize to a cyclically reduced base: with r = pre*core*pre^-1,
  // r^-k p r^k == q  iff  core^-k p' core^k == q' for the pre-conjugates.
  const CyclicForm cf = cyclicReduce(r);
  const Word pp = conjugate(p, cf.prefix);
  const Word qq = conjugate(q, cf.prefix);
  const std::int64_t ell = cf.core.length();
  // Beyond this bound the conjugate is provably longer than q (the axis of
  // core and the axis of p' overlap in a bounded segment once they differ).
  const std::int64_t bound =
      (qq.length() / 2 + 3 * (pp.length() + ell)) / ell + 2;
  Word upPow;    // core^k for k >= 0
  Word downPow;  // core^-k
  for (std::int64_t k = 0; k <= bound; ++k) {
    if (conjugate(pp, upPow) == qq) {
      sol.ks.push_back(k);
    }
    if (k > 0 && conjugate(pp, downPow) == qq) {
      sol.ks.push_back(-k);
    }
    upPow = upPow * cf.core;
    downPow = downPow * cf.core.inverse();
  }
  std::sort(sol.ks.begin(), sol.ks.end());
  return sol;
}

std::string printWord(const Word& w, std::span<const std::string> names) {
  if (w.trivial()) {
    return "1";
  }
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) {
      out += "*";
    }
    if (static_cast<std::size_t>(s.gen) < names.size()) {
      out += names[static_cast<std::size_t>(s.gen)];
    } else {
      out += "g" + std::to_string(s.gen);
    }
    if (s.exp != 1) {
      out += "^" + std::to_string(s.exp);
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Word& w) {
  return os << printWord(w);
}

}  // namespace gew
