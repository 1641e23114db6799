#include "lampi/term.hpp"

#include <algorithm>
#include <cassert>

namespace lampi {

FuelExhausted::FuelExhausted(std::uint64_t budget)
    : KernelError("fuel exhausted after " + std::to_string(budget) + " beta-steps"), budget_(budget) {}

void Fuel::burn() {
    if (left_ == 0)
        throw FuelExhausted(budget_);
    --left_;
}

// --- Term -------------------------------------------------------------------

struct Term::Node {
    TermKind kind = TermKind::Type;
    std::size_t index = 0;
    std::string name;
    std::optional<Term> left;   // fun / annot / domain
    std::optional<Term> right;  // arg / body / codomain
    std::size_t size = 1;
};

namespace {

template <class T>
std::size_t sum_sizes(const T& a, const T& b) { return 1 + a.size() + b.size(); }

}  // namespace

Term::Term() : Term(type_sort()) {}

Term Term::type_sort() {
    static const Term t{std::make_shared<const Node>()};
    return t;
}

Term Term::kind_sort() {
    static const Term t = [] {
        Node n;
        n.kind = TermKind::Kind;
        return Term{std::make_shared<const Node>(std::move(n))};
    }();
    return t;
}

Term Term::sort(Sort s) { return s == Sort::Type ? type_sort() : kind_sort(); }

Term Term::var(std::size_t index) {
    Node n;
    n.kind = TermKind::Var;
    n.index = index;
    return Term{std::make_shared<const Node>(std::move(n))};
}

Term Term::app(Term fun, Term arg) {
    Node n;
    n.kind = TermKind::App;
    n.size = sum_sizes(fun, arg);
    n.left = std::move(fun);
    n.right = std::move(arg);
    return Term{std::make_shared<const Node>(std::move(n))};
}

Term Term::lam(std::string name, Term annot, Term body) {
    Node n;
    n.kind = TermKind::Lam;
    n.name = std::move(name);
    n.size = sum_sizes(annot, body);
    n.left = std::move(annot);
    n.right = std::move(body);
    return Term{std::make_shared<const Node>(std::move(n))};
}

Term Term::pi(std::string name, Term domain, Term codomain) {
    Node n;
    n.kind = TermKind::Pi;
    n.name = std::move(name);
    n.size = sum_sizes(domain, codomain);
    n.left = std::move(domain);
    n.right = std::move(codomain);
    return Term{std::make_shared<const Node>(std::move(n))};
}

Term Term::arrow(Term domain, const Term& codomain) {
    return pi("", std::move(domain), shift(codomain, 1));
}

Term Term::apps(Term head, const std::vector<Term>& args) {
    for (const auto& a : args)
        head = app(std::move(head), a);
    return head;
}

TermKind Term::kind() const { return node_->kind; }

std::size_t Term::index() const {
    assert(is(TermKind::Var));
    return node_->index;
}

const Term& Term::fun() const {
    assert(is(TermKind::App));
    return *node_->left;
}

const Term& Term::arg() const {
    assert(is(TermKind::App));
    return *node_->right;
}

const Term& Term::annot() const {
    assert(is(TermKind::Lam) || is(TermKind::Pi));
    return *node_->left;
}

const Term& Term::body() const {
    assert(is(TermKind::Lam) || is(TermKind::Pi));
    return *node_->right;
}

const std::string& Term::name() const { return node_->name; }

std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.size() != b.size())
        return false;
    switch (a.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        return true;
    case TermKind::Var:
        return a.index() == b.index();
    default:
        return *a.node_->left == *b.node_->left && *a.node_->right == *b.node_->right;
    }
}

// --- PureTerm ---------------------------------------------------------------

struct PureTerm::Node {
    PureKind kind = PureKind::Var;
    std::size_t index = 0;
    std::string name;
    std::optional<PureTerm> left;
    std::optional<PureTerm> right;
    std::size_t size = 1;
};

PureTerm PureTerm::var(std::size_t index) {
    Node n;
    n.kind = PureKind::Var;
    n.index = index;
    return PureTerm{std::make_shared<const Node>(std::move(n))};
}

PureTerm PureTerm::app(PureTerm fun, PureTerm arg) {
    Node n;
    n.kind = PureKind::App;
    n.size = sum_sizes(fun, arg);
    n.left = std::move(fun);
    n.right = std::move(arg);
    return PureTerm{std::make_shared<const Node>(std::move(n))};
}

PureTerm PureTerm::lam(std::string name, PureTerm body) {
    Node n;
    n.kind = PureKind::Lam;
    n.name = std::move(name);
    n.size = 1 + body.size();
    n.right = std::move(body);
    return PureTerm{std::make_shared<const Node>(std::move(n))};
}

PureTerm PureTerm::apps(PureTerm head, const std::vector<PureTerm>& args) {
    for (const auto& a : args)
        head = app(std::move(head), a);
    return head;
}

PureKind PureTerm::kind() const { return node_->kind; }

std::size_t PureTerm::index() const {
    assert(is(PureKind::Var));
    return node_->index;
}

const PureTerm& PureTerm::fun() const {
    assert(is(PureKind::App));
    return *node_->left;
}

const PureTerm& PureTerm::arg() const {
    assert(is(PureKind::App));
    return *node_->right;
}

const PureTerm& PureTerm::body() const {
    assert(is(PureKind::Lam));
    return *node_->right;
}

const std::string& PureTerm::name() const { return node_->name; }

std::size_t PureTerm::size() const { return node_->size; }

bool operator==(const PureTerm& a, const PureTerm& b) {
    if (a.node_ == b.node_)
        return true;
    if (a.kind() != b.kind() || a.size() != b.size())
        return false;
    switch (a.kind()) {
    case PureKind::Var:
        return a.index() == b.index();
    case PureKind::App:
        return a.fun() == b.fun() && a.arg() == b.arg();
    case PureKind::Lam:
        return a.body() == b.body();
    }
    return false;
}

// --- Context ----------------------------------------------------------------

void Context::push(std::string name, Term type) {
    entries_.push_back({std::move(name), std::move(type)});
}

Term Context::lookup(std::size_t index) const {
    if (index >= entries_.size())
        throw KernelError("unbound variable index " + std::to_string(index));
    return shift(entries_[entries_.size() - 1 - index].type, static_cast<std::ptrdiff_t>(index + 1));
}

const std::string& Context::name_of(std::size_t index) const {
    if (index >= entries_.size())
        throw KernelError("unbound variable index " + std::to_string(index));
    return entries_[entries_.size() - 1 - index].name;
}

std::optional<std::size_t> Context::index_of(const std::string& name) const {
    for (std::size_t i = entries_.size(); i-- > 0;)
        if (entries_[i].name == name)
            return entries_.size() - 1 - i;
    return std::nullopt;
}

std::vector<std::string> Context::names() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_)
        out.push_back(e.name);
    return out;
}

Context Context::extended(const Context& extension) const {
    auto entries = entries_;
    entries.insert(entries.end(), extension.entries_.begin(), extension.entries_.end());
    return Context{std::move(entries)};
}

bool operator==(const Context& a, const Context& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].name != b[i].name || !(a[i].type == b[i].type))
            return false;
    return true;
}

// --- de Bruijn plumbing -----------------------------------------------------

Term shift(const Term& t, std::ptrdiff_t amount, std::size_t cutoff) {
    if (amount == 0)
        return t;
    switch (t.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        return t;
    case TermKind::Var: {
        if (t.index() < cutoff)
            return t;
        auto shifted = static_cast<std::ptrdiff_t>(t.index()) + amount;
        if (shifted < static_cast<std::ptrdiff_t>(cutoff))
            throw KernelError("negative shift captured a variable");
        return Term::var(static_cast<std::size_t>(shifted));
    }
    case TermKind::App:
        return Term::app(shift(t.fun(), amount, cutoff), shift(t.arg(), amount, cutoff));
    case TermKind::Lam:
        return Term::lam(t.name(), shift(t.annot(), amount, cutoff), shift(t.body(), amount, cutoff + 1));
    case TermKind::Pi:
        return Term::pi(t.name(), shift(t.annot(), amount, cutoff), shift(t.body(), amount, cutoff + 1));
    }
    return t;
}

PureTerm shift(const PureTerm& t, std::ptrdiff_t amount, std::size_t cutoff) {
    if (amount == 0)
        return t;
    switch (t.kind()) {
    case PureKind::Var: {
        if (t.index() < cutoff)
            return t;
        auto shifted = static_cast<std::ptrdiff_t>(t.index()) + amount;
        if (shifted < static_cast<std::ptrdiff_t>(cutoff))
            throw KernelError("negative shift captured a variable");
        return PureTerm::var(static_cast<std::size_t>(shifted));
    }
    case PureKind::App:
        return PureTerm::app(shift(t.fun(), amount, cutoff), shift(t.arg(), amount, cutoff));
    case PureKind::Lam:
        return PureTerm::lam(t.name(), shift(t.body(), amount, cutoff + 1));
    }
    return t;
}

namespace {

Term subst_at(const Term& t, std::size_t target, const Term& u, std::size_t depth) {
    switch (t.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        return t;
    case TermKind::Var: {
        auto i = t.index();
        if (i < depth)
            return t;
        if (i == target + depth)
            return shift(u, static_cast<std::ptrdiff_t>(depth));
        if (i > target + depth)
            return Term::var(i - 1);
        return t;
    }
    case TermKind::App:
        return Term::app(subst_at(t.fun(), target, u, depth), subst_at(t.arg(), target, u, depth));
    case TermKind::Lam:
        return Term::lam(t.name(), subst_at(t.annot(), target, u, depth), subst_at(t.body(), target, u, depth + 1));
    case TermKind::Pi:
        return Term::pi(t.name(), subst_at(t.annot(), target, u, depth), subst_at(t.body(), target, u, depth + 1));
    }
    return t;
}

}  // namespace

Term subst(const Term& t, std::size_t target, const Term& u) {
    return subst_at(t, target, u, 0);
}

Term instantiate(const Term& body, const Term& arg) {
    // body lives one binder deeper than arg
    return subst(body, 0, arg);
}

bool occurs_free(const Term& t, std::size_t index) {
    switch (t.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        return false;
    case TermKind::Var:
        return t.index() == index;
    case TermKind::App:
        return occurs_free(t.fun(), index) || occurs_free(t.arg(), index);
    case TermKind::Lam:
    case TermKind::Pi:
        return occurs_free(t.annot(), index) || occurs_free(t.body(), index + 1);
    }
    return false;
}

bool occurs_free(const PureTerm& t, std::size_t index) {
    switch (t.kind()) {
    case PureKind::Var:
        return t.index() == index;
    case PureKind::App:
        return occurs_free(t.fun(), index) || occurs_free(t.arg(), index);
    case PureKind::Lam:
        return occurs_free(t.body(), index + 1);
    }
    return false;
}

std::size_t free_extent(const Term& t) {
    switch (t.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        return 0;
    case TermKind::Var:
        return t.index() + 1;
    case TermKind::App:
        return std::max(free_extent(t.fun()), free_extent(t.arg()));
    case TermKind::Lam:
    case TermKind::Pi: {
        auto inner = free_extent(t.body());
        return std::max(free_extent(t.annot()), inner == 0 ? 0 : inner - 1);
    }
    }
    return 0;
}

std::size_t free_extent(const PureTerm& t) {
    switch (t.kind()) {
    case PureKind::Var:
        return t.index() + 1;
    case PureKind::App:
        return std::max(free_extent(t.fun()), free_extent(t.arg()));
    case PureKind::Lam: {
        auto inner = free_extent(t.body());
        return inner == 0 ? 0 : inner - 1;
    }
    }
    return 0;
}

std::optional<Term> strengthen(const Term& t, std::size_t amount) {
    for (std::size_t i = 0; i < amount; ++i)
        if (occurs_free(t, i))
            return std::nullopt;
    return shift(t, -static_cast<std::ptrdiff_t>(amount), 0);
}

// --- reduction --------------------------------------------------------------

namespace {

// Splits (h a1 ... an) into h and the arguments, outermost argument last.
Term unwind(Term t, std::vector<Term>& args_reversed) {
    while (t.is(TermKind::App)) {
        args_reversed.push_back(t.arg());
        t = t.fun();
    }
    return t;
}

Term rewind(Term head, std::vector<Term>& args_reversed) {
    while (!args_reversed.empty()) {
        head = Term::app(std::move(head), std::move(args_reversed.back()));
        args_reversed.pop_back();
    }
    return head;
}

}  // namespace

Term whnf(const Term& t, Fuel& fuel) {
    if (!t.is(TermKind::App))
        return t;
    std::vector<Term> args;
    Term head = unwind(t, args);
    if (!head.is(TermKind::Lam))
        return t;
    while (head.is(TermKind::Lam) && !args.empty()) {
        fuel.burn();
        head = instantiate(head.body(), args.back());
        args.pop_back();
        head = unwind(std::move(head), args);
    }
    return rewind(std::move(head), args);
}

Term whnf(const Term& t, std::uint64_t fuel) {
    Fuel f(fuel);
    return whnf(t, f);
}

Term normalize(const Term& t, Fuel& fuel) {
    Term w = whnf(t, fuel);
    switch (w.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
    case TermKind::Var:
        return w;
    case TermKind::Lam:
        return Term::lam(w.name(), normalize(w.annot(), fuel), normalize(w.body(), fuel));
    case TermKind::Pi:
        return Term::pi(w.name(), normalize(w.annot(), fuel), normalize(w.body(), fuel));
    case TermKind::App: {
        std::vector<Term> args;
        Term head = unwind(w, args);
        // head is not an abstraction here, so it is already in whnf
        head = normalize(head, fuel);
        for (auto& a : args)
            a = normalize(a, fuel);
        return rewind(std::move(head), args);
    }
    }
    return w;
}

Term normalize(const Term& t, std::uint64_t fuel) {
    Fuel f(fuel);
    return normalize(t, f);
}

bool is_normal(const Term& t) {
    switch (t.kind()) {
    case TermKind::Type:
    case TermKind::Kind:
    case TermKind::Var:
        return true;
    case TermKind::App:
        return !t.fun().is(TermKind::Lam) && is_normal(t.fun()) && is_normal(t.arg());
    case TermKind::Lam:
    case TermKind::Pi:
        return is_normal(t.annot()) && is_normal(t.body());
    }
    return false;
}

bool convertible(const Term& a, const Term& b, std::uint64_t fuel) {
    if (a == b)
        return true;
    Fuel f(fuel);
    auto na = normalize(a, f);
    auto nb = normalize(b, f);
    return na == nb;
}

// --- normal-form accessors --------------------------------------------------

HeadSymbol head_symbol(const Term& t) {
    if (!is_normal(t))
        throw KernelError("head symbol of a term that is not in normal form");
    std::size_t binders = 0;
    const Term* cur = &t;
    while (cur->is(TermKind::Lam)) {
        ++binders;
        cur = &cur->body();
    }
    HeadSymbol h;
    if (cur->is(TermKind::Pi)) {
        h.kind = HeadSymbol::Kind::Product;
        return h;
    }
    while (cur->is(TermKind::App))
        cur = &cur->fun();
    switch (cur->kind()) {
    case TermKind::Type:
    case TermKind::Kind:
        h.kind = HeadSymbol::Kind::Sort;
        h.sort = cur->is(TermKind::Type) ? Sort::Type : Sort::Kind;
        return h;
    case TermKind::Var:
        if (cur->index() < binders) {
            h.kind = HeadSymbol::Kind::TopVariable;
            h.index = binders - 1 - cur->index();
        } else {
            h.kind = HeadSymbol::Kind::FreeVariable;
            h.index = cur->index() - binders;
        }
        return h;
    default:
        throw KernelError("application spine headed by a product");
    }
}

std::vector<TopVariable> top_variables(const Term& t) {
    std::vector<TopVariable> out;
    const Term* cur = &t;
    while (cur->is(TermKind::Lam)) {
        out.push_back({out.size(), cur->name()});
        cur = &cur->body();
    }
    return out;
}

PureTerm erase(const Term& t) {
    switch (t.kind()) {
    case TermKind::Var:
        return PureTerm::var(t.index());
    case TermKind::App:
        return PureTerm::app(erase(t.fun()), erase(t.arg()));
    case TermKind::Lam:
        return PureTerm::lam(t.name(), erase(t.body()));
    default:
        throw KernelError("not an object term");
    }
}

Term rename_binders(const Term& t, const std::string& name) {
    switch (t.kind()) {
    case TermKind::App:
        return Term::app(rename_binders(t.fun(), name), rename_binders(t.arg(), name));
    case TermKind::Lam:
        return Term::lam(name, rename_binders(t.annot(), name), rename_binders(t.body(), name));
    case TermKind::Pi:
        return Term::pi(name, rename_binders(t.annot(), name), rename_binders(t.body(), name));
    default:
        return t;
    }
}

}  // namespace lampi
