#include "lampi/pcp.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <set>
#include <sstream>

#include "lampi/syntax.hpp"

namespace lampi {

// --- words, instances, sequences --------------------------------------------

Word Word::parse(std::string_view letters) {
    Word w;
    if (letters == "-")
        return w;
    for (char ch : letters) {
        if (ch != 'A' && ch != 'B')
            throw PcpError("letter '" + std::string(1, ch) + "' is not in {A, B}");
        w.letters_ += ch;
    }
    return w;
}

Word Word::operator+(const Word& rhs) const {
    Word w = *this;
    w.letters_ += rhs.letters_;
    return w;
}

PcpInstance::PcpInstance(std::vector<WordPair> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty())
        throw PcpError("a correspondence problem needs at least one pair");
}

PcpInstance PcpInstance::parse(std::string_view text) {
    std::vector<WordPair> pairs;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> words;
        for (std::string w; fields >> w;)
            words.push_back(w);
        if (words.empty())
            continue;
        if (words.size() != 2)
            throw PcpError("line " + std::to_string(line_no) + ": expected two words, found " +
                           std::to_string(words.size()));
        try {
            pairs.push_back({Word::parse(words[0]), Word::parse(words[1])});
        } catch (const PcpError& e) {
            throw PcpError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return PcpInstance(std::move(pairs));
}

std::string PcpInstance::str() const {
    std::string out;
    for (const auto& p : pairs_)
        out += p.top.str() + " " + p.bottom.str() + "\n";
    return out;
}

SolutionSeq::SolutionSeq(std::vector<std::size_t> zero_based) : indices_(std::move(zero_based)) {
    if (indices_.empty())
        throw PcpError("a solution is a non-empty sequence");
}

SolutionSeq SolutionSeq::from_one_based(const std::vector<std::size_t>& indices) {
    std::vector<std::size_t> zero;
    zero.reserve(indices.size());
    for (auto i : indices) {
        if (i == 0)
            throw PcpError("indices are 1-based");
        zero.push_back(i - 1);
    }
    return SolutionSeq(std::move(zero));
}

SolutionSeq SolutionSeq::parse(std::string_view text) {
    std::vector<std::size_t> indices;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto comma = text.find(',', start);
        auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!field.empty() && field.front() == ' ')
            field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ')
            field.remove_suffix(1);
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
        if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
            throw PcpError("malformed index '" + std::string(field) + "' in solution '" + std::string(text) + "'");
        indices.push_back(value);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return from_one_based(indices);
}

std::vector<std::size_t> SolutionSeq::one_based() const {
    std::vector<std::size_t> out;
    out.reserve(indices_.size());
    for (auto i : indices_)
        out.push_back(i + 1);
    return out;
}

std::string SolutionSeq::str() const {
    std::string out;
    for (auto i : indices_) {
        if (!out.empty())
            out += ',';
        out += std::to_string(i + 1);
    }
    return out;
}

namespace {

void check_range(const PcpInstance& inst, const SolutionSeq& seq) {
    for (auto i : seq.indices())
        if (i >= inst.size())
            throw PcpError("index " + std::to_string(i + 1) + " is out of range 1.." + std::to_string(inst.size()));
}

const Word& side_word(const PcpInstance& inst, std::size_t i, Side side) {
    return side == Side::Top ? inst.pair(i).top : inst.pair(i).bottom;
}

}  // namespace

Word concatenate(const PcpInstance& inst, const SolutionSeq& seq, Side side) {
    check_range(inst, seq);
    Word out;
    for (auto i : seq.indices())
        out = out + side_word(inst, i, side);
    return out;
}

// --- the context and the encodings -------------------------------------------

Context build_gamma() {
    static const Context gamma = parse_context(
        "T : Type\n"
        "a : T -> T\n"
        "b : T -> T\n"
        "c : T\n"
        "d : T\n"
        "P : T -> Type\n"
        "F : !x : T . P x -> T\n");
    return gamma;
}

namespace {

Term gvar(std::size_t index, std::size_t depth) { return Term::var(index + depth); }
PureTerm gpure(std::size_t index, std::size_t depth) { return PureTerm::var(index + depth); }

std::size_t letter_index(char letter) { return letter == 'A' ? gamma_index::a : gamma_index::b; }

Term encode_suffix(std::string_view letters) {
    using namespace gamma_index;
    if (letters.empty())
        return Term::lam("y", gvar(T, 0), Term::var(0));
    Term rest = shift(encode_suffix(letters.substr(1)), 1);
    Term body = Term::app(gvar(letter_index(letters.front()), 1), Term::app(std::move(rest), Term::var(0)));
    return Term::lam("y", gvar(T, 0), std::move(body));
}

Term arrow_tt(std::size_t depth) {
    return Term::arrow(gvar(gamma_index::T, depth), gvar(gamma_index::T, depth));
}

// λy:T.y and λy:T.d in scope depth `depth`
Term identity(std::size_t depth) { return Term::lam("y", gvar(gamma_index::T, depth), Term::var(0)); }
Term constant_d(std::size_t depth) {
    return Term::lam("y", gvar(gamma_index::T, depth), gvar(gamma_index::d, depth + 1));
}

std::vector<Term> encoded_side(const PcpInstance& inst, Side side, std::size_t depth) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < inst.size(); ++i)
        out.push_back(shift(encode_word(side_word(inst, i, side)), static_cast<std::ptrdiff_t>(depth)));
    return out;
}

// (x_{i1} (... (x_{ip} c))) under n binders x1..xn
Term composition(const SolutionSeq& seq, std::size_t n, std::size_t depth) {
    Term acc = gvar(gamma_index::c, depth + n);
    for (auto it = seq.indices().rbegin(); it != seq.indices().rend(); ++it)
        acc = Term::app(Term::var(n - 1 - *it), std::move(acc));
    return acc;
}

// Πx1:T→T ... Πxn:T→T . body  (or λ when `lambda`), body under the n binders
Term over_arguments(std::size_t n, std::size_t depth, Term body, bool lambda) {
    for (std::size_t j = n; j-- > 0;) {
        std::string name = "x" + std::to_string(j + 1);
        Term domain = arrow_tt(depth + j);
        body = lambda ? Term::lam(name, std::move(domain), std::move(body))
                      : Term::pi(name, std::move(domain), std::move(body));
    }
    return body;
}

}  // namespace

Term encode_word(const Word& w) { return encode_suffix(w.letters()); }

PureTerm encode_word_pure(const Word& w) { return erase(encode_word(w)); }

Term letter_spine(const Word& w, const Term& tail) {
    Term acc = tail;
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
        acc = Term::app(gvar(letter_index(*it), 0), std::move(acc));
    return acc;
}

Term apply_encoded(const SolutionSeq& seq, Side side, const PcpInstance& inst) {
    check_range(inst, seq);
    Term acc = gvar(gamma_index::c, 0);
    for (auto it = seq.indices().rbegin(); it != seq.indices().rend(); ++it)
        acc = Term::app(encode_word(side_word(inst, *it, side)), std::move(acc));
    return acc;
}

bool verify_solution(const PcpInstance& inst, const SolutionSeq& seq, std::uint64_t fuel) {
    return convertible(apply_encoded(seq, Side::Top, inst), apply_encoded(seq, Side::Bottom, inst), fuel);
}

// --- bounded search ------------------------------------------------------------

std::optional<SolutionSeq> solve_pcp_bounded(const PcpInstance& inst, std::size_t max_len) {
    if (max_len == 0)
        throw PcpError("max_len must be at least 1");
    // The unmatched tail of the longer side: positive = top is ahead.
    struct State {
        std::vector<std::size_t> seq;
        bool top_ahead;
        std::string overhang;
    };
    std::set<std::pair<bool, std::string>> seen;
    std::vector<State> frontier{State{{}, true, ""}};
    for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
        std::vector<State> next;
        for (const auto& s : frontier) {
            for (std::size_t i = 0; i < inst.size(); ++i) {
                std::string top = (s.top_ahead ? s.overhang : "") + inst.pair(i).top.letters();
                std::string bottom = (s.top_ahead ? "" : s.overhang) + inst.pair(i).bottom.letters();
                std::size_t common = std::min(top.size(), bottom.size());
                if (top.compare(0, common, bottom, 0, common) != 0)
                    continue;
                State n{s.seq, top.size() >= bottom.size(), ""};
                n.seq.push_back(i);
                n.overhang = n.top_ahead ? top.substr(common) : bottom.substr(common);
                if (n.overhang.empty())
                    return SolutionSeq(std::move(n.seq));
                if (!seen.emplace(n.top_ahead, n.overhang).second)
                    continue;
                next.push_back(std::move(n));
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

// --- the reduction term and its witness ------------------------------------------

PureTerm build_reduction_term(const PcpInstance& inst) {
    using namespace gamma_index;
    constexpr std::size_t depth = 3;  // under λf.λg.λh
    const std::size_t n = inst.size();
    const PureTerm f = PureTerm::var(2), g = PureTerm::var(1), h = PureTerm::var(0);

    auto side = [&](Side s) {
        std::vector<PureTerm> args;
        for (std::size_t i = 0; i < n; ++i)
            args.push_back(shift(encode_word_pure(side_word(inst, i, s)), depth));
        return PureTerm::app(h, PureTerm::apps(g, args));
    };

    std::vector<PureTerm> as(n, gpure(a, depth));
    std::vector<PureTerm> ids(n, PureTerm::lam("y", PureTerm::var(0)));
    std::vector<PureTerm> ds(n, PureTerm::lam("y", gpure(d, depth + 1)));

    PureTerm body = PureTerm::apps(f, {
        PureTerm::apps(g, as),
        side(Side::Top),
        side(Side::Bottom),
        PureTerm::apps(gpure(F, depth), {gpure(c, depth), PureTerm::apps(g, ids)}),
        PureTerm::apps(gpure(F, depth), {gpure(d, depth), PureTerm::apps(g, ds)}),
    });
    return PureTerm::lam("f", PureTerm::lam("g", PureTerm::lam("h", std::move(body))));
}

namespace {

const Term& outer_binder(const Term& t, std::size_t position) {
    const Term* cur = &t;
    for (std::size_t i = 0;; ++i) {
        if (!cur->is(TermKind::Lam))
            throw PcpError("witness term is not of the form \\f : _ . \\g : _ . \\h : _ . _");
        if (i == position)
            return *cur;
        cur = &cur->body();
    }
}

}  // namespace

const Term& Witness::f_type() const { return outer_binder(term, 0).annot(); }
const Term& Witness::g_type() const { return outer_binder(term, 1).annot(); }
const Term& Witness::h_type() const { return outer_binder(term, 2).annot(); }

Witness build_witness(const PcpInstance& inst, const SolutionSeq& seq, std::uint64_t fuel) {
    using namespace gamma_index;
    if (!verify_solution(inst, seq, fuel))
        throw PcpError("sequence " + seq.str() + " is not a solution");
    const std::size_t n = inst.size();

    // f : P (a (... (a c))) -> T -> T -> T -> T -> T, one a per index of seq
    Term a_spine = gvar(c, 0);
    for (std::size_t k = 0; k < seq.size(); ++k)
        a_spine = Term::app(gvar(a, 0), std::move(a_spine));
    Term f_type = gvar(T, 0);
    for (int k = 0; k < 4; ++k)
        f_type = Term::arrow(gvar(T, 0), f_type);
    f_type = Term::arrow(Term::app(gvar(P, 0), std::move(a_spine)), f_type);

    // g : Πx1:T→T ... Πxn:T→T . P (x_{i1} (... (x_{ip} c))), under f
    Term g_type = over_arguments(n, 1, Term::app(gvar(P, 1 + n), composition(seq, n, 1)), false);

    // h : P (φ̂_{i1} (... (φ̂_{ip} c))) -> T, under f and g
    Term h_type = shift(Term::arrow(Term::app(gvar(P, 0), apply_encoded(seq, Side::Top, inst)), gvar(T, 0)), 2);

    constexpr std::size_t depth = 3;
    const Term f = Term::var(2), g = Term::var(1), h = Term::var(0);
    auto side = [&](Side s) { return Term::app(h, Term::apps(g, encoded_side(inst, s, depth))); };

    std::vector<Term> as(n, gvar(a, depth));
    std::vector<Term> ids(n, identity(depth));
    std::vector<Term> ds(n, constant_d(depth));

    Term body = Term::apps(f, {
        Term::apps(g, as),
        side(Side::Top),
        side(Side::Bottom),
        Term::apps(gvar(F, depth), {gvar(c, depth), Term::apps(g, ids)}),
        Term::apps(gvar(F, depth), {gvar(d, depth), Term::apps(g, ds)}),
    });
    Term term = Term::lam("f", std::move(f_type),
                          Term::lam("g", std::move(g_type), Term::lam("h", std::move(h_type), std::move(body))));
    return {Context{}, std::move(term)};
}

std::string export_witness(const Witness& w) {
    Context gamma = build_gamma();
    return print_context(w.delta, gamma) + print(w.term, gamma.extended(w.delta)) + "\n";
}

Witness import_witness(std::string_view text) {
    auto parsed = parse_declarations_and_term(text, build_gamma());
    return {std::move(parsed.declarations), std::move(parsed.term)};
}

// --- forward-direction equations -------------------------------------------------

bool ForwardReport::all_hold() const {
    return std::all_of(equations.begin(), equations.end(), [](const EquationCheck& e) { return e.holds; });
}

bool ForwardReport::family_holds(const std::string& family) const {
    bool any = false;
    for (const auto& e : equations) {
        if (e.family != family)
            continue;
        any = true;
        if (!e.holds)
            return false;
    }
    return any;
}

ForwardReport demonstrate_forward_equations(const PcpInstance& inst, const Witness& witness, std::uint64_t fuel) {
    using namespace gamma_index;
    const std::size_t n = inst.size();
    const std::size_t base = witness.delta.size();  // Γ symbols sit below Δ

    auto g_type = strengthen(witness.g_type(), 1);
    if (!g_type)
        throw PcpError("g's type depends on f");
    auto h_type = strengthen(witness.h_type(), 2);
    if (!h_type)
        throw PcpError("h's type depends on f or g");

    // α ≅ Πx1:T→T ... Πxn:T→T . B
    Term alpha = normalize(*g_type, fuel);
    Term inner = alpha;
    for (std::size_t j = 0; j < n; ++j) {
        if (!inner.is(TermKind::Pi))
            throw PcpError("g's type has fewer than " + std::to_string(n) + " products");
        if (!(inner.annot() == normalize(arrow_tt(base + j), fuel)))
            throw PcpError("domain " + std::to_string(j + 1) + " of g's type is not T -> T");
        inner = inner.body();
    }
    ForwardReport report;
    report.beta = over_arguments(n, base, inner, true);

    // β ≅ λx1...λxn.(P (δ x1 ... xn))
    if (!inner.is(TermKind::App) || !(inner.fun() == gvar(P, base + n)))
        throw PcpError("body of g's type is not of the form P _");
    report.delta = over_arguments(n, base, inner.arg(), true);
    report.delta_normal = normalize(report.delta, fuel);

    Term h_norm = normalize(*h_type, fuel);
    if (!h_norm.is(TermKind::Pi))
        throw PcpError("h's type is not a product");
    report.gamma = h_norm.annot();

    auto encoded = [&](Side s) { return encoded_side(inst, s, base); };
    std::vector<Term> ids(n, identity(base)), ds(n, constant_d(base));
    auto add = [&](std::string family, std::string label, Term lhs, Term rhs) {
        bool holds = convertible(lhs, rhs, fuel);
        report.equations.push_back({std::move(family), std::move(label), std::move(lhs), std::move(rhs), holds});
    };
    const Term P_ = gvar(P, base), c_ = gvar(c, base), d_ = gvar(d, base);
    add("gamma", "gamma = beta phi-hat_1 .. phi-hat_n", report.gamma, Term::apps(report.beta, encoded(Side::Top)));
    add("gamma", "gamma = beta psi-hat_1 .. psi-hat_n", report.gamma, Term::apps(report.beta, encoded(Side::Bottom)));
    add("beta-id", "beta (\\y.y) .. (\\y.y) = P c", Term::apps(report.beta, ids), Term::app(P_, c_));
    add("beta-d", "beta (\\y.d) .. (\\y.d) = P d", Term::apps(report.beta, ds), Term::app(P_, d_));
    add("delta", "delta phi-hat_1 .. phi-hat_n = delta psi-hat_1 .. psi-hat_n",
        Term::apps(report.delta, encoded(Side::Top)), Term::apps(report.delta, encoded(Side::Bottom)));
    add("delta-id", "delta (\\y.y) .. (\\y.y) = c", Term::apps(report.delta, ids), c_);
    add("delta-d", "delta (\\y.d) .. (\\y.d) = d", Term::apps(report.delta, ds), d_);

    // δ's normal form λx1...λxn.(x_{i1} (... (x_{ip} c)))
    const Term* cur = &report.delta_normal;
    for (std::size_t j = 0; j < n && cur->is(TermKind::Lam); ++j)
        cur = &cur->body();
    std::vector<std::size_t> indices;
    while (cur->is(TermKind::App) && cur->fun().is(TermKind::Var) && cur->fun().index() < n) {
        indices.push_back(n - 1 - cur->fun().index());
        cur = &cur->arg();
    }
    if (*cur == gvar(c, base + n) && !indices.empty()) {
        report.extracted = SolutionSeq(std::move(indices));
        report.extracted_is_solution = verify_solution(inst, *report.extracted, fuel);
    }
    return report;
}

}  // namespace lampi
