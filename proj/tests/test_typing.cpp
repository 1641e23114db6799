#include <doctest.h>

#include "lampi/pcp.hpp"
#include "lampi/syntax.hpp"
#include "lampi/typing.hpp"
#include "oracles.hpp"

using namespace lampi;

namespace {

const Context& gamma() {
    static const Context g = build_gamma();
    return g;
}

Term g(const std::string& text) { return parse_term(text, gamma()); }

Context tc() { return parse_context("T : Type\nc : T\n"); }

}  // namespace

TEST_CASE("check_context") {
    CHECK_NOTHROW(check_context({}));
    CHECK_NOTHROW(check_context(tc()));
    CHECK_NOTHROW(check_context(gamma()));
    Context bad{{"c", Term::var(0)}};
    CHECK_THROWS_AS(check_context(bad), TypeError);
    Context not_sort = parse_context("T : Type\nc : T\nd : c\n");
    CHECK_THROWS_WITH_AS(check_context(not_sort), doctest::Contains("context entry 3 (d)"), TypeError);
    Context kind_entry{{"k", Term::kind_sort()}};
    CHECK_THROWS_AS(check_context(kind_entry), TypeError);
}

TEST_CASE("infer_type") {
    CHECK(infer_type({}, Term::type_sort()) == Term::kind_sort());
    Context t = parse_context("T : Type\n");
    CHECK(infer_type(t, parse_term("\\x : T . x", t)) == parse_term("!x : T . T", t));
    CHECK(convertible(infer_type(gamma(), g("F c")), g("P c -> T")));
    CHECK(infer_type(gamma(), g("F")) == g("!x : T . P x -> T"));
    CHECK(infer_type(gamma(), g("P")) == g("T -> Type"));
    CHECK(infer_type(gamma(), g("T -> Type")) == Term::kind_sort());
    CHECK_THROWS_AS(infer_type(t, parse_term("Type Type", t)), TypeError);
    CHECK_THROWS_AS(infer_type({}, Term::kind_sort()), TypeError);
    CHECK_THROWS_AS(infer_type({}, Term::var(0)), TypeError);
    CHECK_THROWS_AS(infer_type(gamma(), g("a T")), TypeError);
    // Π domains must be of sort Type
    CHECK_THROWS_AS(infer_type(gamma(), g("!x : Type . x")), TypeError);
    CHECK_THROWS_AS(infer_type(gamma(), g("\\x : Type . x")), TypeError);
    // dependent application
    CHECK(convertible(infer_type(gamma(), g("\\p : P c . F c p")), g("P c -> T")));
    CHECK_THROWS_AS(infer_type(gamma(), g("\\p : P d . F c p")), TypeError);
    // conversion at the domain
    CHECK_NOTHROW(infer_type(gamma(), g("\\p : P ((\\y : T . y) c) . F c p")));
}

TEST_CASE("error messages show normalized types") {
    try {
        infer_type(gamma(), g("\\p : P ((\\y : T . y) d) . F c p"));
        FAIL("expected a type error");
    } catch (const TypeError& e) {
        std::string msg = e.what();
        CHECK(msg.find("P c") != std::string::npos);
        CHECK(msg.find("P d") != std::string::npos);
    }
}

TEST_CASE("check_type") {
    Context ctx = tc();
    CHECK_NOTHROW(check_type(ctx, parse_term("c", ctx), parse_term("T", ctx)));
    CHECK_NOTHROW(check_type(ctx, parse_term("T", ctx), Term::type_sort()));
    CHECK_NOTHROW(check_type(gamma(), g("c"), g("(\\x : T . T) c")));
    CHECK_THROWS_AS(check_type(ctx, parse_term("c", ctx), Term::type_sort()), TypeError);
    // ill-sorted expected type is rejected on its own
    CHECK_THROWS_AS(check_type(ctx, parse_term("c", ctx), parse_term("c", ctx)), TypeError);
}

TEST_CASE("check_type needs a well-sorted expected type") {
    Context ctx = tc();
    Term c = parse_term("c", ctx);
    Term redex = parse_term("(\\x : Type . x) T", ctx);
    // convertible to T, but \x : Type . x has no type: Type is not of sort Type
    CHECK(convertible(redex, parse_term("T", ctx)));
    CHECK_THROWS_AS(check_type(ctx, c, redex), TypeError);
    CHECK_NOTHROW(check_type(gamma(), g("F c"), g("(\\x : T . P x -> T) c")));
}

TEST_CASE("is_object") {
    CHECK(is_object(tc(), parse_term("c", tc())));
    CHECK_FALSE(is_object(tc(), parse_term("T", tc())));
    CHECK(is_object(gamma(), encode_word(Word::parse("A"))));
    CHECK(is_object(gamma(), g("F")));
    CHECK_FALSE(is_object(gamma(), g("P")));
    CHECK_FALSE(is_object(gamma(), g("P c")));
    CHECK_FALSE(is_object(gamma(), Term::type_sort()));
    CHECK_THROWS_AS(is_object(gamma(), g("a T")), TypeError);
}

TEST_CASE("check_pure_typability_witness") {
    Context o = parse_context("o : Type\n");
    auto v = check_pure_typability_witness({}, o, parse_term("\\x : o . x", o), parse_pure_term("\\x . x"));
    CHECK(v.ok());

    v = check_pure_typability_witness({}, {}, parse_term("\\x : Type . x"), parse_pure_term("\\x . x"));
    CHECK(v.failure == WitnessFailure::IllTyped);

    v = check_pure_typability_witness({}, o, parse_term("o", o), parse_pure_term("o", o.names()));
    CHECK(v.failure == WitnessFailure::NotObject);

    v = check_pure_typability_witness({}, o, parse_term("\\x : o . x", o), parse_pure_term("\\x . \\y . x"));
    CHECK(v.failure == WitnessFailure::ContentMismatch);

    Context bad{{"c", Term::var(0)}};
    v = check_pure_typability_witness({}, bad, parse_term("\\x : Type . x"), parse_pure_term("\\x . x"));
    CHECK(v.failure == WitnessFailure::ContextIllFormed);
    CHECK(std::string(to_string(WitnessFailure::NotObject)).size() > 0);

    // α-equivalence of contents
    v = check_pure_typability_witness({}, o, parse_term("\\x : o . x", o), parse_pure_term("\\q . q"));
    CHECK(v.ok());

    // the pure term may use Γ and Δ names
    Context d = parse_context("f : T -> T\n", gamma());
    v = check_pure_typability_witness(gamma(), d, parse_term("f c", gamma().extended(d)),
                                      parse_pure_term("f c", gamma().extended(d).names()));
    CHECK(v.ok());
}

TEST_CASE("derive records the judgment") {
    Judgment j = derive(gamma(), g("a c"));
    CHECK(j.subject == g("a c"));
    CHECK(convertible(j.type, g("T")));
    CHECK(j.context == gamma());
}

TEST_CASE("objects are variables, applications or abstractions") {
    oracle::TermEnumerator gen({Term::var(gamma_index::T), g("T -> T"), g("P c")});
    std::size_t objects = 0;
    for (std::size_t size = 1; size <= 5; ++size)
        for (const auto& t : gen.of_size(size)) {
            try {
                if (!is_object(gamma(), t))
                    continue;
            } catch (const TypeError&) {
                continue;
            }
            ++objects;
            CHECK((t.is(TermKind::Var) || t.is(TermKind::App) || t.is(TermKind::Lam)));
            // the function and the argument of an object application are objects
            if (t.is(TermKind::App)) {
                CHECK(is_object(gamma(), t.fun()));
                CHECK(is_object(gamma(), t.arg()));
            }
            CHECK_NOTHROW(erase(t));
        }
    CHECK(objects > 50);
}
