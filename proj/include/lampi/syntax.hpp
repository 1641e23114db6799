#pragma once

// Concrete syntax.
//
//   term  ::= \x : term . term  |  !x : term . term  |  app -> term  |  app
//   app   ::= atom atom* [binder]
//   atom  ::= Type | Kind | ident | ( term )
//   pure  ::= \x . pure  |  patom patom* [\x . pure]
//
// λ, Π and → are accepted as synonyms of \, ! and ->. `#` starts a line
// comment. Context files hold one `name : term` declaration per line.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lampi/term.hpp"

namespace lampi {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// Identifiers are resolved against `scope`; the last entry is de Bruijn 0.
Term parse_term(std::string_view text, const std::vector<std::string>& scope = {});
Term parse_term(std::string_view text, const Context& scope);

PureTerm parse_pure_term(std::string_view text, const std::vector<std::string>& scope = {});

// Free identifiers are not an error: they are collected in order of first
// occurrence and become an implicit outermost scope (first = outermost).
struct OpenPureTerm {
    PureTerm term;
    std::vector<std::string> free_names;
};
OpenPureTerm parse_open_pure_term(std::string_view text);

// Declarations are resolved left to right, each one seeing `base` and the
// declarations before it. The returned context holds only the new entries.
Context parse_context(std::string_view text, const Context& base = {});

// Zero or more declarations followed by one term (the witness export format).
struct Declarations {
    Context declarations;
    Term term;
};
Declarations parse_declarations_and_term(std::string_view text, const Context& base = {});

std::string print(const Term& t, const std::vector<std::string>& scope = {});
std::string print(const Term& t, const Context& scope);
std::string print(const PureTerm& t, const std::vector<std::string>& scope = {});

// One `name : type` line per entry; each type is printed in the scope of
// `base` and the entries before it.
std::string print_context(const Context& ctx, const Context& base = {});

}  // namespace lampi
