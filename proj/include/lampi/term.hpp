#pragma once

// Terms of the λΠ-calculus, de Bruijn indexed, plus the untyped (pure) terms
// they erase to. Everything here is an immutable value; sharing is by
// shared_ptr to const nodes, so copies are cheap and thread-safe.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lampi {

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

class KernelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when normalization spends its whole β-step budget.
class FuelExhausted : public KernelError {
public:
    explicit FuelExhausted(std::uint64_t budget);
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t budget_;
};

enum class Sort { Type, Kind };

enum class TermKind { Type, Kind, Var, App, Lam, Pi };

class Term {
public:
    // A default-constructed term is the sort Type.
    Term();

    static Term type_sort();
    static Term kind_sort();
    static Term sort(Sort s);
    static Term var(std::size_t index);
    static Term app(Term fun, Term arg);
    static Term lam(std::string name, Term annot, Term body);
    static Term pi(std::string name, Term domain, Term codomain);
    // Non-dependent product; the codomain is taken in the outer scope and
    // shifted under the binder.
    static Term arrow(Term domain, const Term& codomain);

    // Left-nested application spine (f a1 ... an).
    static Term apps(Term head, const std::vector<Term>& args);

    TermKind kind() const;
    bool is(TermKind k) const { return kind() == k; }
    bool is_sort() const { return is(TermKind::Type) || is(TermKind::Kind); }

    std::size_t index() const;        // Var
    const Term& fun() const;          // App
    const Term& arg() const;          // App
    const Term& annot() const;        // Lam: binder type, Pi: domain
    const Term& body() const;         // Lam: body, Pi: codomain
    const std::string& name() const;  // Lam, Pi display name; empty otherwise

    // Node count of the whole tree, annotations included.
    std::size_t size() const;

    // Structural equality; display names are ignored.
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

enum class PureKind { Var, App, Lam };

class PureTerm {
public:
    static PureTerm var(std::size_t index);
    static PureTerm app(PureTerm fun, PureTerm arg);
    static PureTerm lam(std::string name, PureTerm body);
    static PureTerm apps(PureTerm head, const std::vector<PureTerm>& args);

    PureKind kind() const;
    bool is(PureKind k) const { return kind() == k; }
    std::size_t index() const;
    const PureTerm& fun() const;
    const PureTerm& arg() const;
    const PureTerm& body() const;
    const std::string& name() const;

    std::size_t size() const;

    friend bool operator==(const PureTerm& a, const PureTerm& b);

private:
    struct Node;
    explicit PureTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct ContextEntry {
    std::string name;
    Term type;
};

// Ordered declarations; entry i may mention entries 0..i-1. Inside the
// type of entry i, Var 0 is entry i-1. At the end of the context, Var 0 is
// the last entry.
class Context {
public:
    Context() = default;
    Context(std::initializer_list<ContextEntry> entries) : entries_(entries) {}
    explicit Context(std::vector<ContextEntry> entries) : entries_(std::move(entries)) {}

    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::vector<ContextEntry>& entries() const { return entries_; }
    const ContextEntry& operator[](std::size_t position) const { return entries_[position]; }

    void push(std::string name, Term type);
    void pop() { entries_.pop_back(); }

    // Type of the variable with de Bruijn index `index` at the end of the
    // context, shifted so that it is valid there.
    Term lookup(std::size_t index) const;
    const std::string& name_of(std::size_t index) const;
    std::optional<std::size_t> index_of(const std::string& name) const;

    std::vector<std::string> names() const;

    // This context followed by `extension` (ΓΔ).
    Context extended(const Context& extension) const;

    friend bool operator==(const Context& a, const Context& b);

private:
    std::vector<ContextEntry> entries_;
};

// --- de Bruijn plumbing -----------------------------------------------------

// Adds `amount` to every free index >= cutoff. A negative amount must not
// push an index below cutoff (checked).
Term shift(const Term& t, std::ptrdiff_t amount, std::size_t cutoff = 0);
PureTerm shift(const PureTerm& t, std::ptrdiff_t amount, std::size_t cutoff = 0);

// t[target ← u]: u lives in the same scope as t; the free index `target`
// disappears and indices above it are lowered by one.
Term subst(const Term& t, std::size_t target, const Term& u);

// Body of a binder applied to an argument: body[0 ← arg].
Term instantiate(const Term& body, const Term& arg);

bool occurs_free(const Term& t, std::size_t index);
bool occurs_free(const PureTerm& t, std::size_t index);

// One past the largest free index, or 0 for closed terms.
std::size_t free_extent(const Term& t);
std::size_t free_extent(const PureTerm& t);

// Lowers all free indices by `amount`; nullopt when one of the removed
// variables (indices < amount) occurs.
std::optional<Term> strengthen(const Term& t, std::size_t amount);

// --- reduction --------------------------------------------------------------

class Fuel {
public:
    explicit Fuel(std::uint64_t budget = kDefaultFuel) : budget_(budget), left_(budget) {}
    void burn();
    std::uint64_t used() const { return budget_ - left_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t budget_;
    std::uint64_t left_;
};

Term whnf(const Term& t, Fuel& fuel);
Term whnf(const Term& t, std::uint64_t fuel = kDefaultFuel);

// β-normal form by leftmost-outermost reduction.
Term normalize(const Term& t, Fuel& fuel);
Term normalize(const Term& t, std::uint64_t fuel = kDefaultFuel);

bool is_normal(const Term& t);

bool convertible(const Term& a, const Term& b, std::uint64_t fuel = kDefaultFuel);

// --- normal-form accessors --------------------------------------------------

struct HeadSymbol {
    enum class Kind { Sort, TopVariable, FreeVariable, Product };
    Kind kind = Kind::Product;
    Sort sort = Sort::Type;  // Kind::Sort
    // TopVariable: position of the λ-binder, outermost = 0.
    // FreeVariable: de Bruijn index in the scope enclosing t.
    std::size_t index = 0;

    friend bool operator==(const HeadSymbol&, const HeadSymbol&) = default;
};

struct TopVariable {
    std::size_t position;
    std::string name;
};

// Throws KernelError unless t is β-normal.
HeadSymbol head_symbol(const Term& t);
std::vector<TopVariable> top_variables(const Term& t);

// Content of an object: annotations dropped. Throws KernelError
// "not an object term" on Type, Kind or a product.
PureTerm erase(const Term& t);

// Every binder renamed to `name`; used to check α-irrelevance.
Term rename_binders(const Term& t, const std::string& name);

}  // namespace lampi
