#include <doctest.h>

#include "lampi/pcp.hpp"
#include "lampi/syntax.hpp"
#include "oracles.hpp"

using namespace lampi;

namespace {

const Context& gamma() {
    static const Context g = build_gamma();
    return g;
}

}  // namespace

TEST_CASE("parse basics") {
    CHECK(parse_term("Type") == Term::type_sort());
    CHECK(parse_term("Kind") == Term::kind_sort());
    CHECK(parse_term("\\x : Type . x") == Term::lam("x", Term::type_sort(), Term::var(0)));
    CHECK(parse_term("!x : Type . x") == Term::pi("x", Term::type_sort(), Term::var(0)));
    CHECK(parse_term("λx : Type . x") == parse_term("\\x : Type . x"));
    CHECK(parse_term("Πx : Type . x → x") == parse_term("!x : Type . x -> x"));
    CHECK(parse_term("a b c", {"a", "b", "c"}) ==
          Term::app(Term::app(Term::var(2), Term::var(1)), Term::var(0)));
}

TEST_CASE("arrows are right-associative and non-dependent") {
    Term t = parse_term("T -> T -> T", {"T"});
    REQUIRE(t.is(TermKind::Pi));
    CHECK(t.annot() == Term::var(0));
    CHECK(t.body() == parse_term("!x : T . T -> T", {"T"}).body());
    CHECK(t.body().annot() == Term::var(1));
}

TEST_CASE("a binder may close an application") {
    CHECK(parse_term("f \\x : T . x", {"T", "f"}) ==
          Term::app(Term::var(0), Term::lam("x", Term::var(1), Term::var(0))));
}

TEST_CASE("comments and whitespace") {
    CHECK(parse_term("# leading\n  c  # trailing\n", gamma()) == Term::var(gamma_index::c));
}

TEST_CASE("parse errors carry a position") {
    try {
        parse_term("\\x : T .\n  y", gamma());
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(parse_term("(a", gamma()), ParseError);
    CHECK_THROWS_AS(parse_term("a )", gamma()), ParseError);
    CHECK_THROWS_AS(parse_term("", gamma()), ParseError);
    CHECK_THROWS_AS(parse_pure_term("\\x : T . x", {"T"}), ParseError);
    CHECK_THROWS_AS(parse_pure_term("Type"), ParseError);
}

TEST_CASE("pure terms") {
    CHECK(parse_pure_term("\\x . x x") == PureTerm::lam("x", PureTerm::app(PureTerm::var(0), PureTerm::var(0))));
    auto open = parse_open_pure_term("\\x . f x y f");
    REQUIRE(open.free_names == std::vector<std::string>{"f", "y"});
    // f is outermost, so index 1 at the top and 2 under \x
    CHECK(open.term == parse_pure_term("\\x . f x y f", {"f", "y"}));
}

TEST_CASE("contexts") {
    Context ctx = parse_context("T : Type\n# comment\nc : T\n");
    REQUIRE(ctx.size() == 2);
    CHECK(ctx[1].type == Term::var(0));
    CHECK(ctx.lookup(0) == Term::var(1));
    CHECK(print_context(ctx) == "T : Type\nc : T\n");
    CHECK_THROWS_AS(parse_context("T : Type\nT : Type\n"), ParseError);
    CHECK(parse_context(print_context(gamma())) == gamma());
}

TEST_CASE("declarations followed by a term") {
    auto d = parse_declarations_and_term("o : Type\nx : o\n\\y : o . y x\n");
    CHECK(d.declarations.size() == 2);
    CHECK(d.term == Term::lam("y", Term::var(1), Term::app(Term::var(0), Term::var(1))));
}

TEST_CASE("printing") {
    CHECK(print(parse_term("!x : T . T", {"T"}), {"T"}) == "T -> T");
    CHECK(print(parse_term("(T -> T) -> T", {"T"}), {"T"}) == "(T -> T) -> T");
    CHECK(print(parse_term("F c", gamma()), gamma()) == "F c");
    CHECK(print(parse_term("a (b c)", gamma()), gamma()) == "a (b c)");
    CHECK(print(parse_term("(\\x : T . x) c", gamma()), gamma()) == "(\\x : T . x) c");
    CHECK(print(parse_term("\\c : T . c", gamma()), gamma()) == "\\c : T . c");
    CHECK(print(Term::var(3)) == "%3");
    // a binder that would capture a free name is renamed
    std::string s = print(Term::lam("c", Term::var(gamma_index::T), Term::var(gamma_index::c + 1)), gamma());
    CHECK(parse_term(s, gamma()) == Term::lam("c", Term::var(gamma_index::T), Term::var(gamma_index::c + 1)));
    CHECK(s != "\\c : T . c");
}

TEST_CASE("round-trip on an enumerated corpus") {
    oracle::TermEnumerator gen({Term::var(gamma_index::T), Term::type_sort(),
                                parse_term("T -> T", gamma()), parse_term("P c", gamma())});
    std::size_t count = 0;
    for (std::size_t size = 1; size <= 4; ++size)
        for (const auto& t : gen.of_size(size)) {
            std::string text = print(t, gamma());
            CHECK_MESSAGE(parse_term(text, gamma()) == t, text);
            ++count;
        }
    CHECK(count > 1000);
    for (const auto& w : oracle::all_words(4)) {
        Term e = encode_word(Word::parse(w.empty() ? "-" : w));
        CHECK(parse_term(print(e, gamma()), gamma()) == e);
        PureTerm p = encode_word_pure(Word::parse(w.empty() ? "-" : w));
        CHECK(parse_pure_term(print(p, gamma().names()), gamma().names()) == p);
    }
}
