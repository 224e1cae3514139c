// gew -- group equation workbench
//
// Text syntax shared by the CLI and the test fixtures:
//   words      b^-1*c^-2*b*c^2   [u,v] commutators, 1 identity, ?x variables
//   groups     semidirect(free(b,c), cyclic(a,2), action{b->b^-1, c->c})
//   systems    a 'group <desc>' header followed by 'lhs = rhs' lines

#ifndef GEW_PARSE_HPP
#define GEW_PARSE_HPP

#include <string>
#include <vector>

#include "gew/eqsys.hpp"
#include "gew/groups.hpp"

namespace gew {

struct ParseError : Error {
  int line;
  int col;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// A group with its named generator elements, in declaration order.
struct NamedGroup {
  GroupHandle group;
  std::vector<std::pair<std::string, Element>> generators;

  const Element* findGenerator(const std::string& name) const;
};

NamedGroup parseGroup(const std::string& text);

// A word over an explicit generator-name list (laws, free-group words,
// Lee candidates). Unknown names are an error unless growNames is set, in
// which case they are appended in order of first appearance.
Word parseFreeWord(const std::string& text, std::vector<std::string>& names,
                   bool growNames);

// A variable-free word over the group's generators, evaluated.
Element parseElement(const std::string& text, const NamedGroup& G);

// A word mixing ?variables and generators. Variable names are resolved
// against varNames and appended in order of first appearance.
MixedWord parseMixedWord(const std::string& text, const NamedGroup& G,
                         std::vector<std::string>& varNames);

struct ParsedSystem {
  NamedGroup named;
  EquationSystem system;
};

// Full system file: comments (#), blank lines, one 'group' header, then
// one equation per line.
ParsedSystem parseSystem(const std::string& fileText);

}  // namespace gew

#endif  // GEW_PARSE_HPP
