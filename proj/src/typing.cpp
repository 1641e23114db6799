#include "lampi/typing.hpp"

#include "lampi/syntax.hpp"

namespace lampi {

namespace {

class Checker {
public:
    Checker(Context ctx, std::uint64_t fuel) : ctx_(std::move(ctx)), fuel_(fuel) {}

    Term infer(const Term& t) {
        switch (t.kind()) {
        case TermKind::Type:
            return Term::kind_sort();
        case TermKind::Kind:
            throw TypeError("Kind has no type");
        case TermKind::Var:
            if (t.index() >= ctx_.size())
                throw TypeError("unbound variable " + show(t));
            return ctx_.lookup(t.index());
        case TermKind::App:
            return infer_app(t);
        case TermKind::Lam: {
            require_type_domain(t.annot(), "abstraction");
            ctx_.push(t.name(), t.annot());
            Term body_type = infer(t.body());
            sort_of(body_type, "abstraction body type");
            ctx_.pop();
            return Term::pi(t.name(), t.annot(), body_type);
        }
        case TermKind::Pi: {
            require_type_domain(t.annot(), "product");
            ctx_.push(t.name(), t.annot());
            Term s = sort_of(t.body(), "product codomain");
            ctx_.pop();
            return s;
        }
        }
        throw TypeError("unknown term");
    }

    // The sort (Type or Kind) classifying `t`.
    Term sort_of(const Term& t, const char* what) {
        if (t.is(TermKind::Kind))
            throw TypeError(std::string(what) + " is Kind, which has no type");
        Term s = whnf(infer(t), fuel_);
        if (!s.is_sort())
            throw TypeError(std::string(what) + " " + show(t) + " is not a type: its type is " + show(normalize(s, fuel_)));
        return s;
    }

    std::string show(const Term& t) const { return print(t, ctx_); }

private:
    Term infer_app(const Term& t) {
        Term fun_type = whnf(infer(t.fun()), fuel_);
        if (!fun_type.is(TermKind::Pi))
            throw TypeError("cannot apply " + show(t.fun()) + " of non-product type " + show(normalize(fun_type, fuel_)));
        Term arg_type = infer(t.arg());
        if (!convertible(arg_type, fun_type.annot(), fuel_))
            throw TypeError("argument " + show(t.arg()) + " of " + show(t.fun()) + " has type " +
                            show(normalize(arg_type, fuel_)) + " but " + show(normalize(fun_type.annot(), fuel_)) +
                            " was expected");
        return instantiate(fun_type.body(), t.arg());
    }

    void require_type_domain(const Term& domain, const char* where) {
        if (domain.is(TermKind::Kind))
            throw TypeError(std::string(where) + " domain Kind is not of type Type");
        Term s = whnf(infer(domain), fuel_);
        if (!s.is(TermKind::Type))
            throw TypeError(std::string(where) + " domain " + show(domain) + " has type " + show(normalize(s, fuel_)) +
                            ", not Type");
    }

    Context ctx_;
    std::uint64_t fuel_;
};

}  // namespace

void check_context(const Context& ctx, std::uint64_t fuel) {
    Context prefix;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        const auto& entry = ctx[i];
        try {
            Checker(prefix, fuel).sort_of(entry.type, "declared type");
        } catch (const TypeError& e) {
            throw TypeError("context entry " + std::to_string(i + 1) + " (" + entry.name + ") is ill-formed: " + e.what());
        }
        prefix.push(entry.name, entry.type);
    }
}

Term infer_type(const Context& ctx, const Term& t, std::uint64_t fuel) {
    return Checker(ctx, fuel).infer(t);
}

Judgment derive(const Context& ctx, const Term& t, std::uint64_t fuel) {
    return {ctx, t, infer_type(ctx, t, fuel)};
}

void check_type(const Context& ctx, const Term& t, const Term& expected, std::uint64_t fuel) {
    Checker c(ctx, fuel);
    if (!expected.is(TermKind::Kind))
        c.sort_of(expected, "expected type");
    Term actual = c.infer(t);
    if (!convertible(actual, expected, fuel))
        throw TypeError(c.show(t) + " has type " + c.show(normalize(actual, fuel)) + " but " +
                        c.show(normalize(expected, fuel)) + " was expected");
}

bool is_object(const Context& ctx, const Term& t, std::uint64_t fuel) {
    Term type = infer_type(ctx, t, fuel);
    if (type.is(TermKind::Kind))
        return false;
    return whnf(infer_type(ctx, type, fuel), fuel).is(TermKind::Type);
}

const char* to_string(WitnessFailure f) {
    switch (f) {
    case WitnessFailure::None: return "ok";
    case WitnessFailure::ContextIllFormed: return "context ill-formed";
    case WitnessFailure::IllTyped: return "ill-typed";
    case WitnessFailure::NotObject: return "not an object";
    case WitnessFailure::ContentMismatch: return "content mismatch";
    }
    return "?";
}

WitnessVerdict check_pure_typability_witness(const Context& gamma, const Context& delta, const Term& annotated,
                                             const PureTerm& pure, std::uint64_t fuel) {
    Context full = gamma.extended(delta);
    try {
        check_context(full, fuel);
    } catch (const KernelError& e) {
        return {WitnessFailure::ContextIllFormed, e.what()};
    }
    try {
        infer_type(full, annotated, fuel);
    } catch (const KernelError& e) {
        return {WitnessFailure::IllTyped, e.what()};
    }
    if (!is_object(full, annotated, fuel))
        return {WitnessFailure::NotObject, print(annotated, full) + " is not an object"};
    PureTerm content = erase(annotated);
    if (!(content == pure))
        return {WitnessFailure::ContentMismatch,
                "content " + print(content, full.names()) + " differs from " + print(pure, full.names())};
    return {};
}

}  // namespace lampi
