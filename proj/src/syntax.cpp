#include "lampi/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace lampi {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line), column_(column) {}

namespace {

enum class Tok { Ident, Type, Kind, Lambda, Pi, Colon, Dot, Arrow, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

const char* describe(Tok t) {
    switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Type: return "'Type'";
    case Tok::Kind: return "'Kind'";
    case Tok::Lambda: return "'\\'";
    case Tok::Pi: return "'!'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
    }
    return "?";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(std::string_view src, std::size_t first_line) {
    std::vector<Token> out;
    std::size_t line = first_line, col = 1, i = 0;
    auto push = [&](Tok k, std::string text, std::size_t width) {
        out.push_back({k, std::move(text), line, col});
        i += width;
        col += width;
    };
    while (i < src.size()) {
        char ch = src[i];
        if (ch == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            ++i;
            ++col;
            continue;
        }
        if (ch == '#') {
            while (i < src.size() && src[i] != '\n')
                ++i;
            continue;
        }
        auto rest = src.substr(i);
        if (rest.starts_with("->")) { push(Tok::Arrow, "->", 2); continue; }
        // UTF-8 λ, Π, →; a multi-byte glyph advances the column by one
        if (rest.starts_with("\xCE\xBB")) { push(Tok::Lambda, "\\", 2); col -= 1; continue; }
        if (rest.starts_with("\xCE\xA0")) { push(Tok::Pi, "!", 2); col -= 1; continue; }
        if (rest.starts_with("\xE2\x86\x92")) { push(Tok::Arrow, "->", 3); col -= 2; continue; }
        switch (ch) {
        case '\\': push(Tok::Lambda, "\\", 1); continue;
        case '!': push(Tok::Pi, "!", 1); continue;
        case ':': push(Tok::Colon, ":", 1); continue;
        case '.': push(Tok::Dot, ".", 1); continue;
        case '(': push(Tok::LParen, "(", 1); continue;
        case ')': push(Tok::RParen, ")", 1); continue;
        default: break;
        }
        if (ident_start(ch)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j]))
                ++j;
            std::string word(src.substr(i, j - i));
            Tok k = word == "Type" ? Tok::Type : word == "Kind" ? Tok::Kind : Tok::Ident;
            push(k, word, j - i);
            continue;
        }
        throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

// Named syntax tree produced by the parser before scope resolution.
struct Syntax {
    enum class Kind { Type, Kind, Ident, App, Lam, Pi } kind = Kind::Ident;
    std::string name;
    std::vector<Syntax> kids;  // App: fun, arg. Lam: [annot,] body. Pi: domain, codomain.
    bool annotated = false;
    bool arrow = false;  // Pi written as A -> B; codomain parsed outside the binder
    std::size_t line = 0, column = 0;
};

class Parser {
public:
    Parser(std::vector<Token> toks, bool pure) : toks_(std::move(toks)), pure_(pure) {}

    Syntax parse_all() {
        Syntax s = term();
        expect(Tok::End);
        return s;
    }

    // ident ':' term, the whole input
    std::pair<Token, Syntax> declaration() {
        Token name = expect(Tok::Ident);
        expect(Tok::Colon);
        Syntax s = term();
        expect(Tok::End);
        return {name, std::move(s)};
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_++]; }

    Token expect(Tok k) {
        if (peek().kind != k)
            fail(std::string("expected ") + describe(k) + ", found " + describe(peek().kind));
        return next();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(peek().line, peek().column, msg);
    }

    static bool starts_atom(Tok k) {
        return k == Tok::Ident || k == Tok::Type || k == Tok::Kind || k == Tok::LParen;
    }

    Syntax term() {
        if (peek().kind == Tok::Lambda || peek().kind == Tok::Pi)
            return binder();
        Syntax lhs = application();
        if (peek().kind == Tok::Arrow) {
            if (pure_)
                fail("'->' is not allowed in a pure term");
            Token arrow = next();
            Syntax rhs = term();
            Syntax pi;
        pi.kind = Syntax::Kind::Pi;
            pi.arrow = true;
            pi.line = arrow.line;
            pi.column = arrow.column;
            pi.kids.push_back(std::move(lhs));
            pi.kids.push_back(std::move(rhs));
            return pi;
        }
        return lhs;
    }

    Syntax binder() {
        Token intro = next();
        bool is_pi = intro.kind == Tok::Pi;
        if (is_pi && pure_)
            fail("products are not allowed in a pure term");
        Token name = expect(Tok::Ident);
        Syntax s;
        s.kind = is_pi ? Syntax::Kind::Pi : Syntax::Kind::Lam;
        s.name = name.text;
        s.line = intro.line;
        s.column = intro.column;
        if (peek().kind == Tok::Colon) {
            if (pure_)
                fail("type annotation in a pure term");
            next();
            s.kids.push_back(term());
            s.annotated = true;
        } else if (!pure_) {
            fail("expected ':' after binder name '" + name.text + "'");
        }
        expect(Tok::Dot);
        s.kids.push_back(term());
        return s;
    }

    Syntax application() {
        if (!starts_atom(peek().kind))
            fail(std::string("expected a term, found ") + describe(peek().kind));
        Syntax head = atom();
        for (;;) {
            Tok k = peek().kind;
            if (!starts_atom(k) && k != Tok::Lambda && k != Tok::Pi)
                return head;
            Token at = peek();
            Syntax arg = (k == Tok::Lambda || k == Tok::Pi) ? binder() : atom();
            Syntax app;
        app.kind = Syntax::Kind::App;
            app.line = at.line;
            app.column = at.column;
            app.kids.push_back(std::move(head));
            app.kids.push_back(std::move(arg));
            head = std::move(app);
            if (k == Tok::Lambda || k == Tok::Pi)
                return head;  // a binder extends to the right, so it ends the spine
        }
    }

    Syntax atom() {
        Token t = next();
        Syntax s;
        s.kind = Syntax::Kind::Ident;
        s.line = t.line;
        s.column = t.column;
        switch (t.kind) {
        case Tok::Type:
        case Tok::Kind:
            if (pure_) {
                --pos_;
                fail("sorts are not allowed in a pure term");
            }
            s.kind = t.kind == Tok::Type ? Syntax::Kind::Type : Syntax::Kind::Kind;
            return s;
        case Tok::Ident:
            s.name = t.text;
            return s;
        case Tok::LParen: {
            Syntax inner = term();
            expect(Tok::RParen);
            return inner;
        }
        default:
            --pos_;
            fail(std::string("expected a term, found ") + describe(t.kind));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    bool pure_;
};

// Resolves identifiers against a name stack (back = innermost).
class Resolver {
public:
    explicit Resolver(std::vector<std::string> scope) : scope_(std::move(scope)) {}

    std::size_t lookup(const Syntax& s) const {
        for (std::size_t i = scope_.size(); i-- > 0;)
            if (scope_[i] == s.name)
                return scope_.size() - 1 - i;
        throw ParseError(s.line, s.column, "unbound identifier '" + s.name + "'");
    }

    Term term(const Syntax& s) {
        switch (s.kind) {
        case Syntax::Kind::Type: return Term::type_sort();
        case Syntax::Kind::Kind: return Term::kind_sort();
        case Syntax::Kind::Ident: return Term::var(lookup(s));
        case Syntax::Kind::App: return Term::app(term(s.kids[0]), term(s.kids[1]));
        case Syntax::Kind::Lam:
        case Syntax::Kind::Pi: {
            Term annot = term(s.kids[0]);
            if (s.arrow)
                return Term::arrow(std::move(annot), term(s.kids[1]));
            scope_.push_back(s.name);
            Term body = term(s.kids[1]);
            scope_.pop_back();
            return s.kind == Syntax::Kind::Lam ? Term::lam(s.name, std::move(annot), std::move(body))
                                               : Term::pi(s.name, std::move(annot), std::move(body));
        }
        }
        return Term::type_sort();
    }

    PureTerm pure(const Syntax& s) {
        switch (s.kind) {
        case Syntax::Kind::Ident: return PureTerm::var(lookup(s));
        case Syntax::Kind::App: return PureTerm::app(pure(s.kids[0]), pure(s.kids[1]));
        case Syntax::Kind::Lam: {
            scope_.push_back(s.name);
            PureTerm body = pure(s.kids[0]);
            scope_.pop_back();
            return PureTerm::lam(s.name, std::move(body));
        }
        default:
            throw ParseError(s.line, s.column, "not a pure term");
        }
    }

private:
    std::vector<std::string> scope_;
};

void collect_free(const Syntax& s, std::vector<std::string>& bound, std::vector<std::string>& free) {
    switch (s.kind) {
    case Syntax::Kind::Ident:
        if (std::find(bound.begin(), bound.end(), s.name) == bound.end() &&
            std::find(free.begin(), free.end(), s.name) == free.end())
            free.push_back(s.name);
        return;
    case Syntax::Kind::App:
        collect_free(s.kids[0], bound, free);
        collect_free(s.kids[1], bound, free);
        return;
    case Syntax::Kind::Lam:
        bound.push_back(s.name);
        collect_free(s.kids.back(), bound, free);
        bound.pop_back();
        return;
    default:
        return;
    }
}

bool is_blank(std::string_view line) {
    for (char c : line) {
        if (c == '#')
            return true;
        if (!std::isspace(static_cast<unsigned char>(c)))
            return false;
    }
    return true;
}

// `ident :` at the start of the line
bool looks_like_declaration(std::string_view line) {
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
    if (i >= line.size() || !ident_start(line[i]))
        return false;
    std::size_t j = i;
    while (j < line.size() && ident_char(line[j]))
        ++j;
    auto word = line.substr(i, j - i);
    if (word == "Type" || word == "Kind")
        return false;
    while (j < line.size() && std::isspace(static_cast<unsigned char>(line[j])))
        ++j;
    return j < line.size() && line[j] == ':';
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

void declare(Context& all, Context& fresh, std::string_view line, std::size_t line_no) {
    Parser p(lex(line, line_no), false);
    auto [name, syntax] = p.declaration();
    if (fresh.index_of(name.text))
        throw ParseError(name.line, name.column, "duplicate declaration of '" + name.text + "'");
    Term type = Resolver(all.names()).term(syntax);
    all.push(name.text, type);
    fresh.push(name.text, type);
}

}  // namespace

Term parse_term(std::string_view text, const std::vector<std::string>& scope) {
    Parser p(lex(text, 1), false);
    return Resolver(scope).term(p.parse_all());
}

Term parse_term(std::string_view text, const Context& scope) { return parse_term(text, scope.names()); }

PureTerm parse_pure_term(std::string_view text, const std::vector<std::string>& scope) {
    Parser p(lex(text, 1), true);
    return Resolver(scope).pure(p.parse_all());
}

OpenPureTerm parse_open_pure_term(std::string_view text) {
    Parser p(lex(text, 1), true);
    Syntax s = p.parse_all();
    std::vector<std::string> bound, free;
    collect_free(s, bound, free);
    PureTerm t = Resolver(free).pure(s);
    return {std::move(t), std::move(free)};
}

Context parse_context(std::string_view text, const Context& base) {
    Context all = base, fresh;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i]))
            continue;
        declare(all, fresh, lines[i], i + 1);
    }
    return fresh;
}

Declarations parse_declarations_and_term(std::string_view text, const Context& base) {
    Context all = base, fresh;
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (is_blank(lines[i]))
            continue;
        if (looks_like_declaration(lines[i])) {
            declare(all, fresh, lines[i], i + 1);
            continue;
        }
        // everything from here on is the term
        std::size_t offset = static_cast<std::size_t>(lines[i].data() - text.data());
        Parser p(lex(text.substr(offset), i + 1), false);
        Term t = Resolver(all.names()).term(p.parse_all());
        return {std::move(fresh), std::move(t)};
    }
    throw ParseError(lines.size(), 1, "expected a term after the declarations");
}

// --- printing ---------------------------------------------------------------

namespace {

enum Level { kTop = 0, kFun = 1, kArg = 2 };

std::string free_name(const std::vector<std::string>& names, std::size_t index) {
    if (index < names.size() && !names[names.size() - 1 - index].empty())
        return names[names.size() - 1 - index];
    return "%" + std::to_string(index);
}

// A binder name that does not capture a variable the body still refers to.
template <class T>
std::string binder_name(const std::string& wanted, const T& body, const std::vector<std::string>& names) {
    std::string base = wanted.empty() ? "x" : wanted;
    std::string candidate = base;
    for (int suffix = 1;; ++suffix) {
        bool captures = false;
        for (std::size_t i = names.size(); i-- > 0;) {
            if (names[i] == candidate) {
                // index of that entry from inside the new binder
                captures = occurs_free(body, names.size() - i);
                break;
            }
        }
        if (!captures)
            return candidate;
        candidate = base + std::to_string(suffix);
    }
}

class Printer {
public:
    explicit Printer(std::vector<std::string> names) : names_(std::move(names)) {}

    void term(const Term& t, Level level) {
        switch (t.kind()) {
        case TermKind::Type: out_ << "Type"; return;
        case TermKind::Kind: out_ << "Kind"; return;
        case TermKind::Var: out_ << free_name(names_, t.index()); return;
        case TermKind::App:
            open(level == kArg);
            term(t.fun(), kFun);
            out_ << ' ';
            term(t.arg(), kArg);
            close(level == kArg);
            return;
        case TermKind::Pi:
            if (!occurs_free(t.body(), 0)) {
                open(level != kTop);
                term(t.annot(), kFun);
                out_ << " -> ";
                names_.emplace_back();
                term(t.body(), kTop);
                names_.pop_back();
                close(level != kTop);
                return;
            }
            [[fallthrough]];
        case TermKind::Lam: {
            open(level != kTop);
            std::string name = binder_name(t.name(), t.body(), names_);
            out_ << (t.is(TermKind::Lam) ? "\\" : "!") << name << " : ";
            term(t.annot(), kTop);
            out_ << " . ";
            names_.push_back(name);
            term(t.body(), kTop);
            names_.pop_back();
            close(level != kTop);
            return;
        }
        }
    }

    void pure(const PureTerm& t, Level level) {
        switch (t.kind()) {
        case PureKind::Var: out_ << free_name(names_, t.index()); return;
        case PureKind::App:
            open(level == kArg);
            pure(t.fun(), kFun);
            out_ << ' ';
            pure(t.arg(), kArg);
            close(level == kArg);
            return;
        case PureKind::Lam: {
            open(level != kTop);
            std::string name = binder_name(t.name(), t.body(), names_);
            out_ << "\\" << name << " . ";
            names_.push_back(name);
            pure(t.body(), kTop);
            names_.pop_back();
            close(level != kTop);
            return;
        }
        }
    }

    std::string str() const { return out_.str(); }

private:
    void open(bool paren) { if (paren) out_ << '('; }
    void close(bool paren) { if (paren) out_ << ')'; }

    std::vector<std::string> names_;
    std::ostringstream out_;
};

}  // namespace

std::string print(const Term& t, const std::vector<std::string>& scope) {
    Printer p(scope);
    p.term(t, kTop);
    return p.str();
}

std::string print(const Term& t, const Context& scope) { return print(t, scope.names()); }

std::string print(const PureTerm& t, const std::vector<std::string>& scope) {
    Printer p(scope);
    p.pure(t, kTop);
    return p.str();
}

std::string print_context(const Context& ctx, const Context& base) {
    std::string out;
    auto names = base.names();
    for (const auto& e : ctx.entries()) {
        out += e.name + " : " + print(e.type, names) + "\n";
        names.push_back(e.name);
    }
    return out;
}

}  // namespace lampi
