#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gew/parse.hpp"
#include "support.hpp"

using namespace gew;
using gewtest::Rng;

TEST_CASE("free word parsing") {
  std::vector<std::string> names = {"b", "c"};
  const Word w = parseFreeWord("b^-1*c^-2*b*c^2", names, false);
  CHECK(w == commutator(Word::generator(0), Word::generator(1, 2)));

  CHECK(parseFreeWord("1", names, false).trivial());
  CHECK(parseFreeWord("[b,c]", names, false) ==
        commutator(Word::generator(0), Word::generator(1)));
  CHECK(parseFreeWord("[b,c,b]", names, false) ==
        leftNormedCommutator(std::vector<Word>{
            Word::generator(0), Word::generator(1), Word::generator(0)}));
  CHECK(parseFreeWord("(b*c)^2", names, false) ==
        (Word::generator(0) * Word::generator(1)).pow(2));
  // juxtaposition with whitespace
  CHECK(parseFreeWord("b c", names, false) ==
        Word::generator(0) * Word::generator(1));

  // growing name tables allocate in order of first appearance
  std::vector<std::string> grow;
  const Word lee = parseFreeWord("[z1, z2]", grow, true);
  CHECK(grow == std::vector<std::string>{"z1", "z2"});
  CHECK(lee == commutator(Word::generator(0), Word::generator(1)));
}

TEST_CASE("parse errors carry positions") {
  std::vector<std::string> names = {"b"};
  CHECK_THROWS_AS(parseFreeWord("b^", names, false), ParseError);
  try {
    parseFreeWord("b^", names, false);
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.col == 3);
  }
  CHECK_THROWS_AS(parseFreeWord("q", names, false), ParseError);
  CHECK_THROWS_AS(parseFreeWord("[b]", names, false), ParseError);
  CHECK_THROWS_AS(parseFreeWord("b)", names, false), ParseError);
  CHECK_THROWS_AS(parseFreeWord("2", names, false), ParseError);
}

TEST_CASE("group descriptions parse and round-trip") {
  const char* descriptions[] = {
      "free(b,c)",
      "cyclic(a,2)",
      "direct(free(b,c),rational(1))",
      "semidirect(free(b,c),cyclic(a,2),action{b->b^-1,c->c})",
      "freeproduct(cyclic(s,2),cyclic(t,3))",
      "surface(orientable, genus=2)",
  };
  for (const char* text : descriptions) {
    const NamedGroup g = parseGroup(text);
    REQUIRE(g.group != nullptr);
    const NamedGroup again = parseGroup(g.group->describe());
    CHECK(again.group->describe() == g.group->describe());
  }

  CHECK_THROWS_AS(parseGroup("wat(2)"), ParseError);
  CHECK_THROWS_AS(parseGroup("free(b,c) extra"), ParseError);
  CHECK_THROWS_AS(parseGroup("semidirect(cyclic(a,2),cyclic(b,2),"
                             "action{a->a})"),
                  ParseError);
  CHECK_THROWS_AS(
      parseGroup("semidirect(free(b),cyclic(a,2),action{c->b})"), ParseError);
  CHECK_THROWS_AS(parseGroup("direct(free(b),free(b))"), ParseError);
}

TEST_CASE("the worked semidirect example parses to matching arithmetic") {
  const NamedGroup g = parseGroup(
      "semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})");
  const Element ba = parseElement("b*a", g);
  CHECK(g.group->isId(g.group->power(ba, 2)));
  const Element bsq = parseElement("b^2", g);
  CHECK(g.group->equal(g.group->commutatorOf(ba, bsq),
                       parseElement("b^4", g)));
}

TEST_CASE("elements evaluate in their group") {
  const NamedGroup fp = parseGroup("freeproduct(cyclic(s,2),cyclic(t,3))");
  const Element sts = parseElement("s*t*s", fp);
  CHECK(sts.asSyllables().size() == 3);
  CHECK(fp.group->isId(parseElement("s^2", fp)));
  CHECK(fp.group->isId(parseElement("[s,1]", fp)));

  const NamedGroup s2 = parseGroup("surface(orientable, genus=2)");
  CHECK(s2.group->isId(parseElement("[x1,y1]*[x2,y2]", s2)));
  CHECK_FALSE(s2.group->isId(parseElement("x1", s2)));
}

TEST_CASE("mixed words with variables") {
  const NamedGroup g = parseGroup("free(b,c)");
  std::vector<std::string> vars;
  const MixedWord w = parseMixedWord("?x^2 * [?x, b^2]", g, vars);
  CHECK(vars == std::vector<std::string>{"x"});
  CHECK_FALSE(w.coefficientFree());
  // evaluating at x = b gives b^2 * [b, b^2] = b^2
  const Assignment a = {Element::word(Word::generator(0))};
  CHECK(g.group->equal(w.evaluate(*g.group, a),
                       Element::word(Word::generator(0, 2))));
}

TEST_CASE("system files parse") {
  const std::string text = R"(# the worked example
group semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})

?x^2 = 1
[?x, b^2] = b^4
)";
  const ParsedSystem ps = parseSystem(text);
  CHECK(ps.system.variableCount() == 1);
  CHECK(ps.system.equations().size() == 2);
  const Element ba = parseElement("b*a", ps.named);
  CHECK(ps.system.satisfied(Assignment{ba}));

  CHECK_THROWS_AS(parseSystem("?x = 1"), ParseError);  // missing header
  CHECK_THROWS_AS(parseSystem("group free(b)\n?x ?y"), ParseError);
  CHECK_THROWS_AS(parseSystem("group free(b)\n?x = q"), ParseError);
}

TEST_CASE("printing then reparsing is the identity on a word corpus") {
  Rng rng(1499);
  std::vector<std::string> names = {"b", "c", "d"};
  for (int i = 0; i < 120; ++i) {
    const Word w = gewtest::randomWord(rng, 3, 10);
    const std::string text = printWord(w, names);
    std::vector<std::string> parseNames = names;
    CHECK(parseFreeWord(text, parseNames, false) == w);
  }
}

TEST_CASE("printing then reparsing systems over parse-friendly groups") {
  Rng rng(1601);
  const NamedGroup g = parseGroup("cyclic(a,6)");
  for (int trial = 0; trial < 30; ++trial) {
    EquationSystem sys = gewtest::randomPureSystem(rng, g.group, 3, 3);
    const std::string printed = sys.print();
    std::istringstream lines(printed);
    std::string line;
    std::vector<std::string> vars;
    int eq = 0;
    while (std::getline(lines, line)) {
      const std::size_t at = line.find('=');
      REQUIRE(at != std::string::npos);
      const MixedWord lhs = parseMixedWord(line.substr(0, at), g, vars);
      const Element rhs = parseElement(line.substr(at + 1), g);
      CHECK(lhs.sameAs(*g.group, sys.equations()[eq].lhs));
      CHECK(g.group->equal(rhs, sys.equations()[eq].rhs));
      ++eq;
    }
  }
}
