#include "lampi/stlc.hpp"

#include <stdexcept>
#include <utility>

namespace lampi {

struct SimpleType::Parts {
    SimpleType domain;
    SimpleType codomain;
};

const SimpleType& SimpleType::domain() const { return parts_->domain; }
const SimpleType& SimpleType::codomain() const { return parts_->codomain; }

SimpleType SimpleType::base() { return SimpleType{}; }

SimpleType SimpleType::arrow(SimpleType domain, SimpleType codomain) {
    SimpleType t;
    t.kind_ = Kind::Arrow;
    t.parts_ = std::make_shared<const Parts>(Parts{std::move(domain), std::move(codomain)});
    return t;
}

SimpleType SimpleType::meta(std::size_t id) {
    SimpleType t;
    t.kind_ = Kind::Meta;
    t.id_ = id;
    return t;
}

bool SimpleType::contains_meta() const {
    switch (kind_) {
    case Kind::Base: return false;
    case Kind::Meta: return true;
    case Kind::Arrow: return domain().contains_meta() || codomain().contains_meta();
    }
    return false;
}

bool SimpleType::occurs(std::size_t id) const {
    switch (kind_) {
    case Kind::Base: return false;
    case Kind::Meta: return id_ == id;
    case Kind::Arrow: return domain().occurs(id) || codomain().occurs(id);
    }
    return false;
}

std::size_t SimpleType::depth() const {
    if (!is(Kind::Arrow))
        return 0;
    return 1 + std::max(domain().depth(), codomain().depth());
}

bool operator==(const SimpleType& a, const SimpleType& b) {
    if (a.kind_ != b.kind_)
        return false;
    switch (a.kind_) {
    case SimpleType::Kind::Base: return true;
    case SimpleType::Kind::Meta: return a.id_ == b.id_;
    case SimpleType::Kind::Arrow: return a.domain() == b.domain() && a.codomain() == b.codomain();
    }
    return false;
}

namespace {

std::string meta_name(std::size_t id) {
    std::string s = "'";
    s += static_cast<char>('a' + id % 26);
    if (id >= 26)
        s += std::to_string(id / 26);
    return s;
}

void render(const SimpleType& t, bool left_of_arrow, std::string& out) {
    switch (t.kind()) {
    case SimpleType::Kind::Base: out += "o"; return;
    case SimpleType::Kind::Meta: out += meta_name(t.id()); return;
    case SimpleType::Kind::Arrow:
        if (left_of_arrow)
            out += "(";
        render(t.domain(), true, out);
        out += " -> ";
        render(t.codomain(), false, out);
        if (left_of_arrow)
            out += ")";
        return;
    }
}

SimpleType rename(const SimpleType& t, std::map<std::size_t, std::size_t>& ids) {
    switch (t.kind()) {
    case SimpleType::Kind::Base: return t;
    case SimpleType::Kind::Meta: {
        auto [it, fresh] = ids.try_emplace(t.id(), ids.size());
        return SimpleType::meta(it->second);
    }
    case SimpleType::Kind::Arrow: {
        auto d = rename(t.domain(), ids);
        auto c = rename(t.codomain(), ids);
        return SimpleType::arrow(std::move(d), std::move(c));
    }
    }
    return t;
}

bool match(const SimpleType& general, const SimpleType& specific, std::map<std::size_t, SimpleType>& sigma) {
    switch (general.kind()) {
    case SimpleType::Kind::Meta: {
        auto [it, fresh] = sigma.try_emplace(general.id(), specific);
        return fresh || it->second == specific;
    }
    case SimpleType::Kind::Base:
        return specific.is(SimpleType::Kind::Base);
    case SimpleType::Kind::Arrow:
        return specific.is(SimpleType::Kind::Arrow) && match(general.domain(), specific.domain(), sigma) &&
               match(general.codomain(), specific.codomain(), sigma);
    }
    return false;
}

SimpleType offset_metas(const SimpleType& t, std::size_t offset) {
    switch (t.kind()) {
    case SimpleType::Kind::Base: return t;
    case SimpleType::Kind::Meta: return SimpleType::meta(t.id() + offset);
    case SimpleType::Kind::Arrow:
        return SimpleType::arrow(offset_metas(t.domain(), offset), offset_metas(t.codomain(), offset));
    }
    return t;
}

}  // namespace

std::string to_string(const SimpleType& t) {
    std::string out;
    render(t, false, out);
    return out;
}

SimpleType canonicalize(const SimpleType& t) {
    std::map<std::size_t, std::size_t> ids;
    return rename(t, ids);
}

SimpleType ground(const SimpleType& t) {
    switch (t.kind()) {
    case SimpleType::Kind::Base:
    case SimpleType::Kind::Meta: return SimpleType::base();
    case SimpleType::Kind::Arrow: return SimpleType::arrow(ground(t.domain()), ground(t.codomain()));
    }
    return t;
}

bool is_instance(const SimpleType& general, const SimpleType& specific) {
    std::map<std::size_t, SimpleType> sigma;
    return match(general, specific, sigma);
}

// --- unification ------------------------------------------------------------

void Substitution::bind(std::size_t id, SimpleType t) {
    // keep every binding fully applied
    Substitution single;
    single.bindings_.emplace(id, t);
    for (auto& [_, bound] : bindings_)
        bound = single.apply(bound);
    bindings_.emplace(id, std::move(t));
}

SimpleType Substitution::apply(const SimpleType& t) const {
    switch (t.kind()) {
    case SimpleType::Kind::Base: return t;
    case SimpleType::Kind::Meta: {
        auto it = bindings_.find(t.id());
        return it == bindings_.end() ? t : it->second;
    }
    case SimpleType::Kind::Arrow: return SimpleType::arrow(apply(t.domain()), apply(t.codomain()));
    }
    return t;
}

std::optional<Substitution> unify(const std::vector<Constraint>& constraints) {
    Substitution s;
    std::vector<std::pair<SimpleType, SimpleType>> work;
    for (auto it = constraints.rbegin(); it != constraints.rend(); ++it)
        work.emplace_back(it->lhs, it->rhs);
    while (!work.empty()) {
        auto [l, r] = std::move(work.back());
        work.pop_back();
        l = s.apply(l);
        r = s.apply(r);
        if (l == r)
            continue;
        if (r.is(SimpleType::Kind::Meta))
            std::swap(l, r);
        if (l.is(SimpleType::Kind::Meta)) {
            if (r.occurs(l.id()))
                return std::nullopt;
            s.bind(l.id(), r);
            continue;
        }
        if (l.is(SimpleType::Kind::Arrow) && r.is(SimpleType::Kind::Arrow)) {
            work.emplace_back(l.codomain(), r.codomain());
            work.emplace_back(l.domain(), r.domain());
            continue;
        }
        return std::nullopt;  // Base against an arrow
    }
    return s;
}

// --- constraint generation --------------------------------------------------

namespace {

class Generator {
public:
    ConstraintSystem run(const PureTerm& t) {
        sys_.free_variables = free_extent(t);
        for (std::size_t i = 0; i < sys_.free_variables; ++i)
            env_.push_back(binder());
        SimpleType body = visit(t);
        SimpleType root = body;
        for (std::size_t i = sys_.free_variables; i-- > 0;)
            root = SimpleType::arrow(env_[i], root);
        sys_.root = root;
        return std::move(sys_);
    }

private:
    SimpleType fresh() { return SimpleType::meta(sys_.next_meta++); }

    SimpleType binder() {
        SimpleType m = fresh();
        sys_.binder_types.push_back(m);
        return m;
    }

    SimpleType visit(const PureTerm& t) {
        switch (t.kind()) {
        case PureKind::Var:
            return env_[env_.size() - 1 - t.index()];
        case PureKind::App: {
            SimpleType f = visit(t.fun());
            SimpleType a = visit(t.arg());
            SimpleType r = fresh();
            sys_.constraints.push_back({f, SimpleType::arrow(a, r)});
            return r;
        }
        case PureKind::Lam: {
            SimpleType x = binder();
            env_.push_back(x);
            SimpleType b = visit(t.body());
            env_.pop_back();
            return SimpleType::arrow(x, b);
        }
        }
        return fresh();
    }

    ConstraintSystem sys_;
    std::vector<SimpleType> env_;
};

Term annotate(const PureTerm& t, const std::vector<SimpleType>& binder_types, std::size_t& next_binder,
              std::size_t base_index) {
    switch (t.kind()) {
    case PureKind::Var:
        return Term::var(t.index());
    case PureKind::App: {
        Term f = annotate(t.fun(), binder_types, next_binder, base_index);
        Term a = annotate(t.arg(), binder_types, next_binder, base_index);
        return Term::app(std::move(f), std::move(a));
    }
    case PureKind::Lam: {
        Term annot = to_lampi(binder_types[next_binder++], base_index);
        Term body = annotate(t.body(), binder_types, next_binder, base_index + 1);
        return Term::lam(t.name(), std::move(annot), std::move(body));
    }
    }
    return Term::type_sort();
}

}  // namespace

ConstraintSystem generate_constraints(const PureTerm& t) { return Generator{}.run(t); }

std::optional<SimpleType> stlc_infer(const PureTerm& t) {
    auto sys = generate_constraints(t);
    auto s = unify(sys.constraints);
    if (!s)
        return std::nullopt;
    return canonicalize(s->apply(sys.root));
}

Term to_lampi(const SimpleType& t, std::size_t base_index) {
    switch (t.kind()) {
    case SimpleType::Kind::Base:
    case SimpleType::Kind::Meta:
        return Term::var(base_index);
    case SimpleType::Kind::Arrow:
        return Term::arrow(to_lampi(t.domain(), base_index), to_lampi(t.codomain(), base_index));
    }
    return Term::var(base_index);
}

LiftedWitness lift_to_lampi(const PureTerm& t, const SimpleType& type, const std::vector<std::string>& free_names) {
    auto sys = generate_constraints(t);
    auto constraints = sys.constraints;
    constraints.push_back({sys.root, offset_metas(type, sys.next_meta)});
    auto s = unify(constraints);
    if (!s)
        throw std::invalid_argument(to_string(type) + " is not a simple type of the term");

    std::vector<SimpleType> binders;
    binders.reserve(sys.binder_types.size());
    for (const auto& b : sys.binder_types)
        binders.push_back(ground(s->apply(b)));

    LiftedWitness w;
    w.delta.push("o", Term::type_sort());
    for (std::size_t i = 0; i < sys.free_variables; ++i) {
        std::string name = i < free_names.size() ? free_names[i] : "x" + std::to_string(i + 1);
        w.delta.push(std::move(name), to_lampi(binders[i], i));
    }
    std::size_t next = sys.free_variables;
    w.term = annotate(t, binders, next, sys.free_variables);
    return w;
}

}  // namespace lampi
