#pragma once

// Simply-typed inference for pure terms: constraint generation plus
// first-order unification with occurs-check. A pure term is typable in the
// empty λΠ context exactly when it has a simple type, and a successful
// inference lifts to a λΠ witness over the single declaration o : Type.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lampi/term.hpp"

namespace lampi {

class SimpleType {
public:
    enum class Kind { Base, Arrow, Meta };

    static SimpleType base();
    static SimpleType arrow(SimpleType domain, SimpleType codomain);
    static SimpleType meta(std::size_t id);

    Kind kind() const { return kind_; }
    bool is(Kind k) const { return kind_ == k; }
    std::size_t id() const { return id_; }
    const SimpleType& domain() const;
    const SimpleType& codomain() const;

    bool contains_meta() const;
    bool occurs(std::size_t id) const;
    // Arrow depth: Base and metas are 0.
    std::size_t depth() const;

    friend bool operator==(const SimpleType& a, const SimpleType& b);

private:
    struct Parts;
    Kind kind_ = Kind::Base;
    std::size_t id_ = 0;
    std::shared_ptr<const Parts> parts_;
};

std::string to_string(const SimpleType& t);

// Renumbers metas 0, 1, ... in order of first appearance.
SimpleType canonicalize(const SimpleType& t);

// Every remaining meta replaced by Base.
SimpleType ground(const SimpleType& t);

// One-way matching: is `specific` = σ(general) for some σ on metas?
bool is_instance(const SimpleType& general, const SimpleType& specific);

struct Constraint {
    SimpleType lhs;
    SimpleType rhs;
};

class Substitution {
public:
    void bind(std::size_t id, SimpleType t);
    SimpleType apply(const SimpleType& t) const;
    const std::map<std::size_t, SimpleType>& bindings() const { return bindings_; }

private:
    std::map<std::size_t, SimpleType> bindings_;
};

// Constraints for the closure of t: each free variable is bound by an
// implicit outermost λ (first binder = highest free index).
struct ConstraintSystem {
    SimpleType root;
    // One entry per λ in preorder, implicit closure binders first.
    std::vector<SimpleType> binder_types;
    std::vector<Constraint> constraints;
    std::size_t free_variables = 0;
    std::size_t next_meta = 0;
};

ConstraintSystem generate_constraints(const PureTerm& t);

// Most general unifier, or nullopt on clash or occurs-check failure.
std::optional<Substitution> unify(const std::vector<Constraint>& constraints);

// Principal type of the closure of t, canonicalized; nullopt when untypable.
std::optional<SimpleType> stlc_infer(const PureTerm& t);

struct LiftedWitness {
    Context delta;  // o : Type, then one declaration per free variable
    Term term;
};

// `type` must be an instance of the closure's principal type. Free variables
// are declared in Δ with the given names (default x1, x2, ...).
LiftedWitness lift_to_lampi(const PureTerm& t, const SimpleType& type, const std::vector<std::string>& free_names = {});

// λΠ rendering of a ground simple type when the base o is de Bruijn `base_index`.
Term to_lampi(const SimpleType& t, std::size_t base_index);

}  // namespace lampi
