#include "lampi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "lampi/pcp.hpp"
#include "lampi/stlc.hpp"
#include "lampi/syntax.hpp"
#include "lampi/term.hpp"
#include "lampi/typing.hpp"

namespace lampi::cli {

namespace {

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Options {
    std::uint64_t fuel = kDefaultFuel;
    std::string ctx_file;
    std::vector<std::string> files;
    std::string instance_file;
    std::string expect_file;
    std::string solution;
    std::string witness_file;
    std::string out_file;
    std::size_t max_len = kDefaultMaxLen;
};

// Context given by --ctx, or by a leading positional file for check/infer.
Context load_context(Options& o, std::size_t positional_terms) {
    if (o.files.size() > positional_terms) {
        if (!o.ctx_file.empty())
            throw InputError("context given both positionally and with --ctx");
        o.ctx_file = o.files.front();
        o.files.erase(o.files.begin());
    }
    if (o.ctx_file.empty())
        return {};
    return parse_context(read_file(o.ctx_file));
}

int cmd_check(Options& o, std::ostream& out) {
    Context ctx = load_context(o, 1);
    Term t = parse_term(read_file(o.files.at(0)), ctx);
    try {
        check_context(ctx, o.fuel);
        out << "context: ok\n";
        Term type = infer_type(ctx, t, o.fuel);
        out << "type: " << print(normalize(type, o.fuel), ctx) << "\n";
        out << "object: " << (is_object(ctx, t, o.fuel) ? "true" : "false") << "\n";
        if (!o.expect_file.empty()) {
            Term expected = parse_term(read_file(o.expect_file), ctx);
            check_type(ctx, t, expected, o.fuel);
            out << "expected: ok\n";
        }
    } catch (const TypeError& e) {
        out << "status: ill-typed\nerror: " << e.what() << "\n";
        return kNegative;
    }
    out << "status: well-typed\n";
    return kOk;
}

int cmd_infer(Options& o, std::ostream& out) {
    Context ctx = load_context(o, 1);
    Term t = parse_term(read_file(o.files.at(0)), ctx);
    try {
        check_context(ctx, o.fuel);
        Term type = infer_type(ctx, t, o.fuel);
        out << "type: " << print(type, ctx) << "\n";
        out << "normal-type: " << print(normalize(type, o.fuel), ctx) << "\n";
    } catch (const TypeError& e) {
        out << "status: ill-typed\nerror: " << e.what() << "\n";
        return kNegative;
    }
    return kOk;
}

int cmd_normalize(Options& o, std::ostream& out) {
    Context ctx = load_context(o, 1);
    Term t = parse_term(read_file(o.files.at(0)), ctx);
    Fuel fuel(o.fuel);
    Term n = normalize(t, fuel);
    out << "normal-form: " << print(n, ctx) << "\n";
    out << "steps: " << fuel.used() << "\n";
    return kOk;
}

int cmd_erase(Options& o, std::ostream& out) {
    Context ctx = load_context(o, 1);
    Term t = parse_term(read_file(o.files.at(0)), ctx);
    try {
        out << "content: " << print(erase(t), ctx.names()) << "\n";
    } catch (const KernelError& e) {
        out << "error: " << e.what() << "\n";
        return kNegative;
    }
    return kOk;
}

int cmd_infer_stlc(Options& o, std::ostream& out) {
    auto open = parse_open_pure_term(read_file(o.files.at(0)));
    auto type = stlc_infer(open.term);
    if (!type) {
        out << "type: untypable\n";
        return kNegative;
    }
    out << "type: " << to_string(*type) << "\n";
    auto lifted = lift_to_lampi(open.term, *type, open.free_names);
    auto names = lifted.delta.names();
    for (const auto& e : lifted.delta.entries()) {
        auto prefix = std::vector<std::string>(names.begin(), names.begin() + (&e - lifted.delta.entries().data()));
        out << "declare: " << e.name << " : " << print(e.type, prefix) << "\n";
    }
    out << "witness: " << print(lifted.term, lifted.delta) << "\n";
    auto verdict = check_pure_typability_witness({}, lifted.delta, lifted.term, open.term, o.fuel);
    out << "witness-check: " << (verdict ? "ok" : verdict.detail) << "\n";
    return verdict ? kOk : kNegative;
}

PcpInstance load_instance(const Options& o) { return PcpInstance::parse(read_file(o.instance_file)); }

int cmd_pcp_term(Options& o, std::ostream& out) {
    PcpInstance inst = load_instance(o);
    out << "pairs: " << inst.size() << "\n";
    out << "term: " << print(build_reduction_term(inst), build_gamma().names()) << "\n";
    return kOk;
}

int cmd_pcp_solve(Options& o, std::ostream& out) {
    PcpInstance inst = load_instance(o);
    out << "max-len: " << o.max_len << "\n";
    auto sol = solve_pcp_bounded(inst, o.max_len);
    if (!sol) {
        out << "solution: none\n";
        return kNegative;
    }
    out << "solution: " << sol->str() << "\n";
    out << "length: " << sol->size() << "\n";
    out << "word: " << concatenate(inst, *sol, Side::Top).str() << "\n";
    return kOk;
}

int cmd_pcp_verify(Options& o, std::ostream& out) {
    PcpInstance inst = load_instance(o);
    SolutionSeq seq = SolutionSeq::parse(o.solution);
    out << "top: " << concatenate(inst, seq, Side::Top).str() << "\n";
    out << "bottom: " << concatenate(inst, seq, Side::Bottom).str() << "\n";
    bool ok = verify_solution(inst, seq, o.fuel);
    out << "solution: " << (ok ? "valid" : "invalid") << "\n";
    return ok ? kOk : kNegative;
}

void print_witness(const Witness& w, std::ostream& out) {
    auto names = build_gamma().extended(w.delta).names();
    out << "f: " << print(w.f_type(), names) << "\n";
    names.push_back("f");
    out << "g: " << print(w.g_type(), names) << "\n";
    names.push_back("g");
    out << "h: " << print(w.h_type(), names) << "\n";
}

int cmd_pcp_witness(Options& o, std::ostream& out) {
    PcpInstance inst = load_instance(o);
    SolutionSeq seq = SolutionSeq::parse(o.solution);
    if (!verify_solution(inst, seq, o.fuel)) {
        out << "solution: invalid\n";
        return kNegative;
    }
    out << "solution: valid\n";
    Witness w = build_witness(inst, seq, o.fuel);
    print_witness(w, out);
    Context gamma = build_gamma();
    out << "witness: " << print(w.term, gamma.extended(w.delta)) << "\n";
    auto verdict = check_pure_typability_witness(gamma, w.delta, w.term, build_reduction_term(inst), o.fuel);
    out << "check: " << (verdict ? "ok" : verdict.detail) << "\n";
    if (!o.out_file.empty()) {
        std::ofstream file(o.out_file);
        if (!file)
            throw InputError("cannot write '" + o.out_file + "'");
        file << export_witness(w);
        out << "written: " << o.out_file << "\n";
    }
    return verdict ? kOk : kNegative;
}

int cmd_pcp_demo(Options& o, std::ostream& out) {
    PcpInstance inst = load_instance(o);
    Witness w;
    if (o.witness_file.empty()) {
        SolutionSeq seq = SolutionSeq::parse(o.solution);
        if (!verify_solution(inst, seq, o.fuel)) {
            out << "solution: invalid\n";
            return kNegative;
        }
        out << "solution: valid\n";
        w = build_witness(inst, seq, o.fuel);
    } else {
        w = import_witness(read_file(o.witness_file));
    }
    print_witness(w, out);
    Context gamma = build_gamma();
    auto verdict = check_pure_typability_witness(gamma, w.delta, w.term, build_reduction_term(inst), o.fuel);
    out << "check: " << (verdict ? "ok" : std::string(to_string(verdict.failure))) << "\n";

    ForwardReport report = demonstrate_forward_equations(inst, w, o.fuel);
    Context scope = gamma.extended(w.delta);
    out << "beta: " << print(report.beta, scope) << "\n";
    out << "delta: " << print(report.delta, scope) << "\n";
    out << "gamma: " << print(report.gamma, scope) << "\n";
    out << "delta-normal: " << print(report.delta_normal, scope) << "\n";
    std::map<std::string, int> seen;
    for (const auto& eq : report.equations) {
        int k = ++seen[eq.family];
        bool several = std::count_if(report.equations.begin(), report.equations.end(),
                                     [&](const EquationCheck& e) { return e.family == eq.family; }) > 1;
        std::string key = several ? eq.family + "." + std::to_string(k) : eq.family;
        out << "equation " << key << ": " << (eq.holds ? "ok" : "failed") << "\n";
    }
    if (report.extracted) {
        out << "extracted: " << report.extracted->str() << "\n";
        out << "extracted-solution: " << (report.extracted_is_solution ? "valid" : "invalid") << "\n";
    } else {
        out << "extracted: none\n";
    }
    return verdict && report.all_hold() ? kOk : kNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"lampi: a λΠ kernel and the PCP-to-typability reduction", "lampi"};
    app.fallthrough();
    app.require_subcommand(1);
    Options o;
    app.add_option("--fuel", o.fuel, "beta-step budget per normalization")->capture_default_str();
    app.add_option("--ctx", o.ctx_file, "context file (one declaration per line)");

    std::function<int(Options&, std::ostream&)> action;
    auto sub = [&](const char* name, const char* help, int (*fn)(Options&, std::ostream&)) {
        CLI::App* s = app.add_subcommand(name, help);
        s->callback([&action, fn] { action = fn; });
        return s;
    };

    auto* check = sub("check", "type-check a term in a context", cmd_check);
    check->add_option("files", o.files, "[CTX] TERM")->required()->expected(1, 2);
    check->add_option("--expect", o.expect_file, "file with the expected type");

    sub("infer", "synthesize the type of a term", cmd_infer)
        ->add_option("files", o.files, "[CTX] TERM")->required()->expected(1, 2);
    sub("normalize", "beta-normal form of a term", cmd_normalize)
        ->add_option("files", o.files, "TERM")->required()->expected(1);
    sub("erase", "content of an object term", cmd_erase)
        ->add_option("files", o.files, "TERM")->required()->expected(1);
    sub("infer-stlc", "simple type of a pure term", cmd_infer_stlc)
        ->add_option("files", o.files, "PURE_TERM")->required()->expected(1);
    sub("pcp-term", "reduction term of a PCP instance", cmd_pcp_term)
        ->add_option("instance", o.instance_file, "PCP instance file")->required();

    auto* solve = sub("pcp-solve", "bounded breadth-first PCP search", cmd_pcp_solve);
    solve->add_option("instance", o.instance_file, "PCP instance file")->required();
    solve->add_option("--max-len", o.max_len, "longest sequence to try")->capture_default_str()
        ->check(CLI::PositiveNumber);

    for (auto [name, help, fn] : {std::tuple{"pcp-witness", "typing witness for a solution", cmd_pcp_witness},
                                  std::tuple{"pcp-verify", "check a solution by convertibility", cmd_pcp_verify}}) {
        auto* s = sub(name, help, fn);
        s->add_option("instance", o.instance_file, "PCP instance file")->required();
        s->add_option("solution", o.solution, "comma-separated 1-based indices")->required();
        if (std::string(name) == "pcp-witness")
            s->add_option("--out", o.out_file, "write the witness (declarations, then the term)");
    }
    auto* demo = sub("pcp-demo", "witness, kernel check and the forward equation chain", cmd_pcp_demo);
    demo->add_option("instance", o.instance_file, "PCP instance file")->required();
    demo->add_option("solution", o.solution, "comma-separated 1-based indices");
    demo->add_option("--witness", o.witness_file, "check this witness file instead of building one");
    demo->callback([&] {
        action = cmd_pcp_demo;
        if (o.solution.empty() && o.witness_file.empty())
            throw CLI::ValidationError("pcp-demo", "needs a solution or --witness");
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, err, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        return action(o, out);
    } catch (const ParseError& e) {
        out << "error: parse error at " << e.what() << "\n";
    } catch (const FuelExhausted& e) {
        out << "error: " << e.what() << "\n";
    } catch (const PcpError& e) {
        out << "error: " << e.what() << "\n";
    } catch (const InputError& e) {
        out << "error: " << e.what() << "\n";
    } catch (const KernelError& e) {
        out << "error: " << e.what() << "\n";
    }
    return kInputError;
}

}  // namespace lampi::cli
