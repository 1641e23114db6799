#pragma once

// Independent oracles for the test suites. Nothing here calls the encoders,
// the solver or the simple-type inference under test; they are rebuilt from
// strings, brute force and direct enumeration.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lampi/pcp.hpp"
#include "lampi/stlc.hpp"
#include "lampi/syntax.hpp"
#include "lampi/term.hpp"
#include "lampi/typing.hpp"

namespace oracle {

using namespace lampi;

inline const std::vector<std::string>& gamma_names() {
    static const std::vector<std::string> names{"T", "a", "b", "c", "d", "P", "F"};
    return names;
}

// "AB" -> the parsed text "a (b (c))"
inline Term spine_from_string(const std::string& word, const std::string& tail = "c") {
    std::string text;
    for (char ch : word)
        text += std::string(ch == 'A' ? "a" : "b") + " (";
    text += tail;
    text += std::string(word.size(), ')');
    return parse_term(text, gamma_names());
}

inline std::vector<std::string> all_words(std::size_t max_len) {
    std::vector<std::string> out{""};
    for (std::size_t begin = 0, len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (char ch : {'A', 'B'})
                out.push_back(out[i] + ch);
        begin = end;
    }
    return out;
}

using RawInstance = std::vector<std::pair<std::string, std::string>>;

inline PcpInstance make_instance(const RawInstance& raw) {
    std::vector<WordPair> pairs;
    for (const auto& [top, bottom] : raw)
        pairs.push_back({Word::parse(top.empty() ? "-" : top), Word::parse(bottom.empty() ? "-" : bottom)});
    return PcpInstance(std::move(pairs));
}

inline bool strings_match(const RawInstance& inst, const std::vector<std::size_t>& seq) {
    std::string top, bottom;
    for (auto i : seq) {
        top += inst[i].first;
        bottom += inst[i].second;
    }
    return top == bottom;
}

// All 0-based sequences of length 1..max_len over n indices, by length then
// lexicographically.
inline std::vector<std::vector<std::size_t>> all_sequences(std::size_t n, std::size_t max_len) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::vector<std::size_t>> layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : layer)
            for (std::size_t i = 0; i < n; ++i) {
                auto t = s;
                t.push_back(i);
                next.push_back(t);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// First solution in length-then-lexicographic order, no pruning.
inline std::optional<std::vector<std::size_t>> naive_solve(const RawInstance& inst, std::size_t max_len) {
    for (const auto& s : all_sequences(inst.size(), max_len))
        if (strings_match(inst, s))
            return s;
    return std::nullopt;
}

// Instances with n <= max_pairs pairs of words of length <= max_word (ε included).
inline std::vector<RawInstance> all_instances(std::size_t max_pairs, std::size_t max_word) {
    auto words = all_words(max_word);
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& top : words)
        for (const auto& bottom : words)
            pairs.emplace_back(top, bottom);
    std::vector<RawInstance> out;
    std::vector<RawInstance> layer{{}};
    for (std::size_t n = 1; n <= max_pairs; ++n) {
        std::vector<RawInstance> next;
        for (const auto& inst : layer)
            for (const auto& p : pairs) {
                auto t = inst;
                t.push_back(p);
                next.push_back(t);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

// --- syntactic enumeration of λΠ terms over Γ ------------------------------

// Every term of exactly `size` nodes built from Type, the Γ constants, bound
// variables, application, and λ/Π with annotations drawn from `annots`
// (given in Γ's scope, shifted to depth). Annotations are not counted.
class TermEnumerator {
public:
    explicit TermEnumerator(std::vector<Term> annots) : annots_(std::move(annots)) {}

    std::vector<Term> of_size(std::size_t size, std::size_t depth = 0) {
        auto key = std::make_pair(size, depth);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        std::vector<Term> out;
        if (size == 1) {
            out.push_back(Term::type_sort());
            for (std::size_t i = 0; i < 7 + depth; ++i)
                out.push_back(Term::var(i));
        } else {
            for (std::size_t l = 1; l + 1 < size; ++l) {
                auto funs = of_size(l, depth);
                auto args = of_size(size - 1 - l, depth);
                for (const auto& f : funs)
                    for (const auto& x : args)
                        out.push_back(Term::app(f, x));
            }
            for (const auto& body : of_size(size - 1, depth + 1))
                for (const auto& a : annots_) {
                    out.push_back(Term::lam("x", shift(a, static_cast<std::ptrdiff_t>(depth)), body));
                    out.push_back(Term::pi("x", shift(a, static_cast<std::ptrdiff_t>(depth)), body));
                }
        }
        memo_.emplace(key, out);
        return out;
    }

private:
    std::vector<Term> annots_;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> memo_;
};

// --- type-directed enumeration of normal inhabitants -----------------------

inline std::size_t content_size(const Term& t) {
    switch (t.kind()) {
    case TermKind::Var: return 1;
    case TermKind::App: return 1 + content_size(t.fun()) + content_size(t.arg());
    case TermKind::Lam: return 1 + content_size(t.body());
    default: return 1;
    }
}

// β-normal terms of type `target` in `ctx` whose content has at most
// `budget` nodes. Abstractions are produced at Π types; neutral terms
// (variable heads with enumerated argument spines) at any type.
class InhabitantEnumerator {
public:
    InhabitantEnumerator(Context ctx, std::uint64_t fuel = kDefaultFuel) : ctx_(std::move(ctx)), fuel_(fuel) {}

    std::vector<Term> inhabitants(const Term& target, std::size_t budget) {
        std::vector<Term> out;
        if (budget == 0)
            return out;
        Term nf = normalize(target, fuel_);
        if (nf.is(TermKind::Pi) && budget >= 2) {
            ctx_.push(nf.name().empty() ? "x" : nf.name(), nf.annot());
            for (auto& body : inhabitants(nf.body(), budget - 1))
                out.push_back(Term::lam(nf.name(), nf.annot(), std::move(body)));
            ctx_.pop();
        }
        for (std::size_t i = 0; i < ctx_.size(); ++i)
            spines(Term::var(i), ctx_.lookup(i), nf, budget - 1, out);
        return out;
    }

private:
    void spines(const Term& head, const Term& head_type, const Term& target, std::size_t budget,
                std::vector<Term>& out) {
        Term ht = normalize(head_type, fuel_);
        if (ht == target)
            out.push_back(head);
        if (!ht.is(TermKind::Pi) || budget < 2)
            return;
        // one application node plus at least one node of argument
        for (auto& arg : inhabitants(ht.annot(), budget - 1)) {
            std::size_t used = 1 + content_size(arg);
            if (used > budget)
                continue;
            spines(Term::app(head, arg), instantiate(ht.body(), arg), target, budget - used, out);
        }
    }

    Context ctx_;
    std::uint64_t fuel_;
};

// --- simple types by brute force -------------------------------------------

// Ground simple types over two rigid bases, 0 and 1.
struct GType {
    int base = 0;  // -1 for arrows
    std::shared_ptr<GType> dom, cod;

    static GType atom(int b) { return GType{b, nullptr, nullptr}; }
    static GType arrow(GType d, GType c) {
        return GType{-1, std::make_shared<GType>(std::move(d)), std::make_shared<GType>(std::move(c))};
    }
    friend bool operator==(const GType& x, const GType& y) {
        if (x.base != y.base)
            return false;
        return x.base != -1 || (*x.dom == *y.dom && *x.cod == *y.cod);
    }
};

inline std::vector<GType> ground_types(std::size_t depth) {
    std::vector<GType> out{GType::atom(0), GType::atom(1)};
    for (std::size_t k = 0; k < depth; ++k) {
        std::vector<GType> next{GType::atom(0), GType::atom(1)};
        for (const auto& d : out)
            for (const auto& c : out)
                next.push_back(GType::arrow(d, c));
        out = std::move(next);
    }
    return out;
}

// Type of t under binder assignment `binders` (λs in preorder) and `env`.
inline std::optional<GType> check_simple(const PureTerm& t, const std::vector<GType>& binders, std::size_t& next,
                                         std::vector<GType>& env) {
    switch (t.kind()) {
    case PureKind::Var: return env[env.size() - 1 - t.index()];
    case PureKind::Lam: {
        GType dom = binders[next++];
        env.push_back(dom);
        auto body = check_simple(t.body(), binders, next, env);
        env.pop_back();
        if (!body)
            return std::nullopt;
        return GType::arrow(dom, *body);
    }
    case PureKind::App: {
        auto f = check_simple(t.fun(), binders, next, env);
        auto x = check_simple(t.arg(), binders, next, env);
        if (!f || !x || f->base != -1 || !(*f->dom == *x))
            return std::nullopt;
        return *f->cod;
    }
    }
    return std::nullopt;
}

inline std::size_t count_lambdas(const PureTerm& t) {
    switch (t.kind()) {
    case PureKind::Var: return 0;
    case PureKind::Lam: return 1 + count_lambdas(t.body());
    case PureKind::App: return count_lambdas(t.fun()) + count_lambdas(t.arg());
    }
    return 0;
}

// Closes t over its free variables with outermost λs.
inline PureTerm close_term(const PureTerm& t) {
    PureTerm out = t;
    for (std::size_t i = free_extent(t); i-- > 0;)
        out = PureTerm::lam("v", out);
    return out;
}

// All ground typings of the closed term with binder types of depth <= depth.
inline std::vector<GType> all_typings(const PureTerm& closed, std::size_t depth, std::size_t cap = 400000) {
    auto types = ground_types(depth);
    std::size_t k = count_lambdas(closed);
    std::vector<GType> out;
    std::vector<std::size_t> choice(k, 0);
    std::size_t visited = 0;
    while (visited++ < cap) {
        std::vector<GType> binders;
        for (auto c : choice)
            binders.push_back(types[c]);
        std::size_t next = 0;
        std::vector<GType> env;
        if (auto ty = check_simple(closed, binders, next, env))
            out.push_back(*ty);
        std::size_t pos = 0;
        while (pos < k && ++choice[pos] == types.size())
            choice[pos++] = 0;
        if (pos == k)
            break;
    }
    return out;
}

// Is `specific` a ground instance of the principal type (metas bind
// consistently, Base only matches base 0)?
inline bool matches(const SimpleType& general, const GType& specific, std::map<std::size_t, GType>& sigma) {
    switch (general.kind()) {
    case SimpleType::Kind::Base: return specific.base == 0;
    case SimpleType::Kind::Meta: {
        auto [it, fresh] = sigma.emplace(general.id(), specific);
        return fresh || it->second == specific;
    }
    case SimpleType::Kind::Arrow:
        return specific.base == -1 && matches(general.domain(), *specific.dom, sigma) &&
               matches(general.codomain(), *specific.cod, sigma);
    }
    return false;
}

inline bool is_ground_instance(const SimpleType& general, const GType& specific) {
    std::map<std::size_t, GType> sigma;
    return matches(general, specific, sigma);
}

}  // namespace oracle

namespace oracle {

#ifndef LAMPI_FIXTURES_DIR
#define LAMPI_FIXTURES_DIR "tests/fixtures"
#endif

// Non-comment, non-blank lines of tests/fixtures/pure_terms.txt.
inline std::vector<std::string> pure_corpus() {
    std::ifstream in(std::string(LAMPI_FIXTURES_DIR) + "/pure_terms.txt");
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);)
        if (!line.empty() && line.front() != '#')
            out.push_back(line);
    return out;
}

}  // namespace oracle
