#include "gew/parse.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

namespace gew {

namespace {

enum class Tok {
  Ident,
  Number,
  Caret,
  Star,
  LParen,
  RParen,
  LBracket,
  RBracket,
  LBrace,
  RBrace,
  Comma,
  Question,
  Equals,
  Arrow,
  Minus,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }
  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, current_.line, current_.col);
  }

 private:
  std::string text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token current_;

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      bump();
    }
    current_.line = line_;
    current_.col = col_;
    if (pos_ >= text_.size()) {
      current_ = {Tok::End, "", line_, col_};
      return;
    }
    const char c = text_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        name += text_[pos_];
        bump();
      }
      current_ = {Tok::Ident, std::move(name), current_.line, current_.col};
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        num += text_[pos_];
        bump();
      }
      current_ = {Tok::Number, std::move(num), current_.line, current_.col};
      return;
    }
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
      bump();
      bump();
      current_ = {Tok::Arrow, "->", current_.line, current_.col};
      return;
    }
    static const std::pair<char, Tok> singles[] = {
        {'^', Tok::Caret},    {'*', Tok::Star},     {'(', Tok::LParen},
        {')', Tok::RParen},   {'[', Tok::LBracket}, {']', Tok::RBracket},
        {'{', Tok::LBrace},   {'}', Tok::RBrace},   {',', Tok::Comma},
        {'?', Tok::Question}, {'=', Tok::Equals},   {'-', Tok::Minus}};
    for (const auto& [ch, kind] : singles) {
      if (c == ch) {
        bump();
        current_ = {kind, std::string(1, c), current_.line, current_.col};
        return;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_,
                     col_);
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
};

// ------------------------------------------------------------ word parser

struct WordNode {
  enum class Kind { Product, Gen, Var, One, Commutator } kind;
  std::vector<WordNode> children;  // Product, Commutator
  std::string name;                // Gen, Var
  std::int64_t exp = 1;
};

class WordParser {
 public:
  WordParser(Lexer& lex, bool allowVars) : lex_(lex), allowVars_(allowVars) {}

  // word := term* up to a stopper token
  WordNode parseWord() {
    WordNode node{WordNode::Kind::Product, {}, "", 1};
    bool expectTerm = true;
    for (;;) {
      const Tok k = lex_.peek().kind;
      if (k == Tok::End || k == Tok::RParen || k == Tok::RBracket ||
          k == Tok::Comma || k == Tok::Equals || k == Tok::RBrace) {
        break;
      }
      if (k == Tok::Star) {
        lex_.take();
        expectTerm = true;
        continue;
      }
      node.children.push_back(parseTerm());
      expectTerm = false;
    }
    if (expectTerm && node.children.empty()) {
      lex_.fail("expected a word");
    }
    return node;
  }

 private:
  Lexer& lex_;
  bool allowVars_;

  WordNode parseTerm() {
    WordNode base = parseFactor();
    if (lex_.peek().kind == Tok::Caret) {
      lex_.take();
      base.exp *= parseInt();
    }
    return base;
  }

  std::int64_t parseInt() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    if (lex_.peek().kind != Tok::Number) {
      lex_.fail("expected an integer exponent");
    }
    const std::int64_t v = std::stoll(lex_.take().text);
    return neg ? -v : v;
  }

  WordNode parseFactor() {
    const Token t = lex_.peek();
    switch (t.kind) {
      case Tok::Number:
        if (t.text == "1") {
          lex_.take();
          return {WordNode::Kind::One, {}, "", 1};
        }
        lex_.fail("only '1' is a valid numeric factor");
      case Tok::Question: {
        lex_.take();
        if (!allowVars_) {
          lex_.fail("variables are not allowed here");
        }
        if (lex_.peek().kind != Tok::Ident) {
          lex_.fail("expected a variable name after '?'");
        }
        return {WordNode::Kind::Var, {}, lex_.take().text, 1};
      }
      case Tok::Ident:
        lex_.take();
        return {WordNode::Kind::Gen, {}, t.text, 1};
      case Tok::LParen: {
        lex_.take();
        WordNode inner = parseWord();
        if (lex_.peek().kind != Tok::RParen) {
          lex_.fail("expected ')'");
        }
        lex_.take();
        return inner;
      }
      case Tok::LBracket: {
        lex_.take();
        WordNode comm{WordNode::Kind::Commutator, {}, "", 1};
        comm.children.push_back(parseWord());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          comm.children.push_back(parseWord());
        }
        if (comm.children.size() < 2) {
          lex_.fail("a commutator needs at least two entries");
        }
        if (lex_.peek().kind != Tok::RBracket) {
          lex_.fail("expected ']'");
        }
        lex_.take();
        return comm;
      }
      default:
        lex_.fail("expected a word factor");
    }
  }
};

Word nodeToWord(const WordNode& n, std::vector<std::string>& names,
                bool growNames, const Lexer& lex) {
  auto resolve = [&](const std::string& name) -> std::int32_t {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
      return static_cast<std::int32_t>(it - names.begin());
    }
    if (!growNames) {
      lex.fail("unknown generator '" + name + "'");
    }
    names.push_back(name);
    return static_cast<std::int32_t>(names.size()) - 1;
  };
  switch (n.kind) {
    case WordNode::Kind::One:
      return Word();
    case WordNode::Kind::Var:
      lex.fail("variables are not allowed in plain words");
    case WordNode::Kind::Gen:
      return Word::generator(resolve(n.name), n.exp);
    case WordNode::Kind::Product: {
      Word acc;
      for (const WordNode& c : n.children) {
        acc = acc * nodeToWord(c, names, growNames, lex);
      }
      return acc.pow(n.exp);
    }
    case WordNode::Kind::Commutator: {
      std::vector<Word> parts;
      for (const WordNode& c : n.children) {
        parts.push_back(nodeToWord(c, names, growNames, lex));
      }
      return leftNormedCommutator(parts).pow(n.exp);
    }
  }
  lex.fail("unreachable word node");
}

MixedWord nodeToMixed(const WordNode& n, const NamedGroup& G,
                      std::vector<std::string>& varNames, const Lexer& lex) {
  const Group& grp = *G.group;
  switch (n.kind) {
    case WordNode::Kind::One:
      return MixedWord();
    case WordNode::Kind::Var: {
      const auto it = std::find(varNames.begin(), varNames.end(), n.name);
      std::int32_t var;
      if (it != varNames.end()) {
        var = static_cast<std::int32_t>(it - varNames.begin());
      } else {
        varNames.push_back(n.name);
        var = static_cast<std::int32_t>(varNames.size()) - 1;
      }
      return MixedWord::variable(var, n.exp);
    }
    case WordNode::Kind::Gen: {
      const Element* g = G.findGenerator(n.name);
      if (g == nullptr) {
        lex.fail("unknown generator '" + n.name + "'");
      }
      return MixedWord::coefficient(grp, grp.power(*g, n.exp));
    }
    case WordNode::Kind::Product: {
      MixedWord acc;
      for (const WordNode& c : n.children) {
        acc = acc.times(grp, nodeToMixed(c, G, varNames, lex));
      }
      return acc.powWord(grp, n.exp);
    }
    case WordNode::Kind::Commutator: {
      std::vector<MixedWord> parts;
      for (const WordNode& c : n.children) {
        parts.push_back(nodeToMixed(c, G, varNames, lex));
      }
      MixedWord acc = parts[0].commutatorWith(grp, parts[1]);
      for (std::size_t i = 2; i < parts.size(); ++i) {
        acc = acc.commutatorWith(grp, parts[i]);
      }
      return acc.powWord(grp, n.exp);
    }
  }
  lex.fail("unreachable word node");
}

// ----------------------------------------------------------- group parser

NamedGroup parseGroupInner(Lexer& lex);

std::vector<std::string> parseNameList(Lexer& lex) {
  std::vector<std::string> names;
  for (;;) {
    if (lex.peek().kind != Tok::Ident) {
      lex.fail("expected a generator name");
    }
    names.push_back(lex.take().text);
    if (lex.peek().kind != Tok::Comma) {
      break;
    }
    lex.take();
  }
  return names;
}

std::int64_t parseNumber(Lexer& lex) {
  if (lex.peek().kind != Tok::Number) {
    lex.fail("expected a number");
  }
  return std::stoll(lex.take().text);
}

void expect(Lexer& lex, Tok kind, const char* what) {
  if (lex.peek().kind != kind) {
    lex.fail(std::string("expected ") + what);
  }
  lex.take();
}

NamedGroup combineFactors(
    const std::string& kind, std::vector<NamedGroup> parts, Lexer& lex) {
  std::vector<GroupHandle> handles;
  for (const NamedGroup& p : parts) {
    handles.push_back(p.group);
  }
  NamedGroup out;
  out.group = kind == "direct" ? makeDirect(handles)
                               : makeFreeProduct(handles);
  // embed the factor generators
  const auto embedded = out.group->generators();
  std::size_t at = 0;
  for (const NamedGroup& p : parts) {
    for (const auto& [name, g] : p.generators) {
      if (at >= embedded.size()) {
        lex.fail("internal: generator embedding mismatch");
      }
      out.generators.emplace_back(name, embedded[at++].second);
    }
  }
  std::set<std::string> seen;
  for (const auto& [name, g] : out.generators) {
    if (!seen.insert(name).second) {
      lex.fail("duplicate generator name '" + name + "' across factors");
    }
  }
  return out;
}

NamedGroup parseGroupInner(Lexer& lex) {
  if (lex.peek().kind != Tok::Ident) {
    lex.fail("expected a group description");
  }
  const std::string kind = lex.take().text;
  expect(lex, Tok::LParen, "'('");

  NamedGroup out;
  if (kind == "free") {
    const auto names = parseNameList(lex);
    out.group = makeFree(static_cast<std::int32_t>(names.size()), names);
  } else if (kind == "cyclic") {
    if (lex.peek().kind != Tok::Ident) {
      lex.fail("cyclic(<name>, <order>)");
    }
    const std::string name = lex.take().text;
    expect(lex, Tok::Comma, "','");
    out.group = makeCyclic(parseNumber(lex), name);
  } else if (kind == "rational") {
    out.group = makeRationalVector(
        static_cast<std::int32_t>(parseNumber(lex)));
  } else if (kind == "surface") {
    if (lex.peek().kind != Tok::Ident) {
      lex.fail("surface(orientable|nonorientable, genus=<g>)");
    }
    const std::string orient = lex.take().text;
    if (orient != "orientable" && orient != "nonorientable") {
      lex.fail("surface orientation must be 'orientable' or "
               "'nonorientable'");
    }
    expect(lex, Tok::Comma, "','");
    if (lex.peek().kind != Tok::Ident || lex.take().text != "genus") {
      lex.fail("expected 'genus='");
    }
    expect(lex, Tok::Equals, "'='");
    out.group = makeSurface(orient == "orientable",
                            static_cast<std::int32_t>(parseNumber(lex)));
  } else if (kind == "direct" || kind == "freeproduct") {
    std::vector<NamedGroup> parts;
    parts.push_back(parseGroupInner(lex));
    while (lex.peek().kind == Tok::Comma) {
      lex.take();
      parts.push_back(parseGroupInner(lex));
    }
    expect(lex, Tok::RParen, "')'");
    return combineFactors(kind, std::move(parts), lex);
  } else if (kind == "semidirect") {
    NamedGroup freePart = parseGroupInner(lex);
    const auto* F = dynamic_cast<const FreeGroup*>(freePart.group.get());
    if (F == nullptr) {
      lex.fail("the first semidirect factor must be free(...)");
    }
    expect(lex, Tok::Comma, "','");
    NamedGroup acting = parseGroupInner(lex);
    const auto* C = dynamic_cast<const CyclicGroup*>(acting.group.get());
    if (C == nullptr) {
      lex.fail("the second semidirect factor must be cyclic(...)");
    }
    expect(lex, Tok::Comma, "','");
    if (lex.peek().kind != Tok::Ident || lex.take().text != "action") {
      lex.fail("expected action{...}");
    }
    expect(lex, Tok::LBrace, "'{'");
    std::vector<std::string> freeNames = F->names();
    std::vector<Word> images(freeNames.size());
    std::vector<bool> given(freeNames.size(), false);
    for (;;) {
      if (lex.peek().kind != Tok::Ident) {
        lex.fail("expected a generator name in the action");
      }
      const Token nameTok = lex.take();
      const auto it =
          std::find(freeNames.begin(), freeNames.end(), nameTok.text);
      if (it == freeNames.end()) {
        lex.fail("action names an unknown generator '" + nameTok.text + "'");
      }
      expect(lex, Tok::Arrow, "'->'");
      WordParser wp(lex, /*allowVars=*/false);
      const WordNode node = wp.parseWord();
      images[static_cast<std::size_t>(it - freeNames.begin())] =
          nodeToWord(node, freeNames, /*growNames=*/false, lex);
      given[static_cast<std::size_t>(it - freeNames.begin())] = true;
      if (lex.peek().kind != Tok::Comma) {
        break;
      }
      lex.take();
    }
    expect(lex, Tok::RBrace, "'}'");
    for (std::size_t i = 0; i < given.size(); ++i) {
      if (!given[i]) {
        lex.fail("action misses generator '" + freeNames[i] + "'");
      }
    }
    out.group = makeSemidirect(static_cast<std::int32_t>(freeNames.size()),
                               freeNames, C->modulus(), C->name(), images);
  } else {
    lex.fail("unknown group kind '" + kind + "'");
  }
  expect(lex, Tok::RParen, "')'");
  if (out.generators.empty()) {
    for (const auto& [name, g] : out.group->generators()) {
      out.generators.emplace_back(name, g);
    }
  }
  return out;
}

}  // namespace

const Element* NamedGroup::findGenerator(const std::string& name) const {
  for (const auto& [n, g] : generators) {
    if (n == name) {
      return &g;
    }
  }
  return nullptr;
}

NamedGroup parseGroup(const std::string& text) {
  Lexer lex(text);
  NamedGroup g = parseGroupInner(lex);
  if (lex.peek().kind != Tok::End) {
    lex.fail("trailing input after the group description");
  }
  return g;
}

Word parseFreeWord(const std::string& text, std::vector<std::string>& names,
                   bool growNames) {
  Lexer lex(text);
  WordParser wp(lex, /*allowVars=*/false);
  const WordNode node = wp.parseWord();
  if (lex.peek().kind != Tok::End) {
    lex.fail("trailing input after the word");
  }
  return nodeToWord(node, names, growNames, lex);
}

Element parseElement(const std::string& text, const NamedGroup& G) {
  Lexer lex(text);
  WordParser wp(lex, /*allowVars=*/false);
  const WordNode node = wp.parseWord();
  if (lex.peek().kind != Tok::End) {
    lex.fail("trailing input after the element");
  }
  std::vector<std::string> noVars;
  const MixedWord w = nodeToMixed(node, G, noVars, lex);
  return w.evaluate(*G.group, {});
}

MixedWord parseMixedWord(const std::string& text, const NamedGroup& G,
                         std::vector<std::string>& varNames) {
  Lexer lex(text);
  WordParser wp(lex, /*allowVars=*/true);
  const WordNode node = wp.parseWord();
  if (lex.peek().kind != Tok::End) {
    lex.fail("trailing input after the word");
  }
  return nodeToMixed(node, G, varNames, lex);
}

ParsedSystem parseSystem(const std::string& fileText) {
  std::istringstream in(fileText);
  std::string line;
  std::optional<NamedGroup> named;
  std::vector<std::pair<std::string, int>> equationLines;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    const auto notSpace = [](unsigned char c) { return !std::isspace(c); };
    if (std::find_if(line.begin(), line.end(), notSpace) == line.end()) {
      continue;
    }
    if (!named) {
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head != "group") {
        throw ParseError("the first line must be 'group <description>'",
                         lineNo, 1);
      }
      std::string rest;
      std::getline(ls, rest);
      named = parseGroup(rest);
      continue;
    }
    equationLines.emplace_back(line, lineNo);
  }
  if (!named) {
    throw ParseError("missing 'group' header", lineNo, 1);
  }

  std::vector<std::string> varNames;
  std::vector<std::pair<MixedWord, Element>> equations;
  for (const auto& [text, no] : equationLines) {
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("an equation needs '='", no, 1);
    }
    try {
      MixedWord lhs = parseMixedWord(text.substr(0, eq), *named, varNames);
      Element rhs = parseElement(text.substr(eq + 1), *named);
      equations.emplace_back(std::move(lhs), std::move(rhs));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " [in equation line " +
                           std::to_string(no) + "]",
                       no, e.col);
    }
  }
  ParsedSystem out{*named, EquationSystem(named->group, varNames)};
  for (auto& [lhs, rhs] : equations) {
    out.system.addEquation(std::move(lhs), std::move(rhs));
  }
  return out;
}

}  // namespace gew
