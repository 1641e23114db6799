#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lampi/pcp.hpp"
#include "lampi/stlc.hpp"
#include "lampi/syntax.hpp"
#include "lampi/term.hpp"
#include "lampi/typing.hpp"

namespace py = pybind11;
using namespace lampi;

namespace {

SolutionSeq to_seq(const std::vector<std::size_t>& one_based) { return SolutionSeq::from_one_based(one_based); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "λΠ kernel and the PCP-to-typability reduction";

    auto kernel_error = py::register_exception<KernelError>(m, "KernelError");
    py::register_exception<TypeError>(m, "TypeError", kernel_error.ptr());
    py::register_exception<FuelExhausted>(m, "FuelExhausted", kernel_error.ptr());
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<PcpError>(m, "PcpError", PyExc_ValueError);

    m.attr("DEFAULT_FUEL") = kDefaultFuel;

    py::class_<Context>(m, "Context")
        .def(py::init<>())
        .def_static("parse", [](const std::string& text) { return parse_context(text); }, py::arg("text"))
        .def_property_readonly("names", &Context::names)
        .def("extended", &Context::extended)
        .def("__len__", &Context::size)
        .def("__str__", [](const Context& c) { return print_context(c); })
        .def("__eq__", [](const Context& a, const Context& b) { return a == b; });

    py::class_<Term>(m, "Term")
        .def_property_readonly("size", &Term::size)
        .def("print", [](const Term& t, const Context& scope) { return print(t, scope); }, py::arg("scope") = Context{})
        .def("__str__", [](const Term& t) { return print(t); })
        .def("__eq__", [](const Term& a, const Term& b) { return a == b; });

    py::class_<PureTerm>(m, "PureTerm")
        .def_property_readonly("size", &PureTerm::size)
        .def("print", [](const PureTerm& t, const Context& scope) { return print(t, scope.names()); },
             py::arg("scope") = Context{})
        .def("__str__", [](const PureTerm& t) { return print(t); })
        .def("__eq__", [](const PureTerm& a, const PureTerm& b) { return a == b; });

    m.def("parse_term", [](const std::string& text, const Context& scope) { return parse_term(text, scope); },
          py::arg("text"), py::arg("scope") = Context{});
    m.def("parse_pure_term",
          [](const std::string& text, const Context& scope) { return parse_pure_term(text, scope.names()); },
          py::arg("text"), py::arg("scope") = Context{});

    m.def("normalize", py::overload_cast<const Term&, std::uint64_t>(&normalize), py::arg("term"),
          py::arg("fuel") = kDefaultFuel);
    m.def("convertible", &convertible, py::arg("a"), py::arg("b"), py::arg("fuel") = kDefaultFuel);
    m.def("erase", &erase, py::arg("term"));
    m.def("check_context", &check_context, py::arg("ctx"), py::arg("fuel") = kDefaultFuel);
    m.def("infer_type", &infer_type, py::arg("ctx"), py::arg("term"), py::arg("fuel") = kDefaultFuel);
    m.def("check_type", &check_type, py::arg("ctx"), py::arg("term"), py::arg("expected"),
          py::arg("fuel") = kDefaultFuel);
    m.def("is_object", &is_object, py::arg("ctx"), py::arg("term"), py::arg("fuel") = kDefaultFuel);
    m.def(
        "check_pure_typability_witness",
        [](const Context& gamma, const Context& delta, const Term& annotated, const PureTerm& pure) {
            auto v = check_pure_typability_witness(gamma, delta, annotated, pure);
            return py::make_tuple(v.ok(), std::string(to_string(v.failure)), v.detail);
        },
        py::arg("gamma"), py::arg("delta"), py::arg("annotated"), py::arg("pure"),
        "Returns (ok, failing conjunct, detail).");

    m.def(
        "stlc_infer",
        [](const std::string& text) -> std::optional<std::string> {
            auto open = parse_open_pure_term(text);
            auto type = stlc_infer(open.term);
            if (!type)
                return std::nullopt;
            return to_string(*type);
        },
        py::arg("text"), "Principal simple type of a pure term, or None when untypable.");
    m.def(
        "lift_to_lampi",
        [](const std::string& text) -> std::optional<std::pair<Context, Term>> {
            auto open = parse_open_pure_term(text);
            auto type = stlc_infer(open.term);
            if (!type)
                return std::nullopt;
            auto w = lift_to_lampi(open.term, *type, open.free_names);
            return std::pair{w.delta, w.term};
        },
        py::arg("text"), "(Δ, annotated term) for a typable pure term, or None.");

    py::class_<PcpInstance>(m, "PcpInstance")
        .def(py::init([](const std::vector<std::pair<std::string, std::string>>& pairs) {
                 std::vector<WordPair> words;
                 for (const auto& [top, bottom] : pairs)
                     words.push_back({Word::parse(top), Word::parse(bottom)});
                 return PcpInstance(std::move(words));
             }),
             py::arg("pairs"))
        .def_static("parse", [](const std::string& text) { return PcpInstance::parse(text); })
        .def("__len__", &PcpInstance::size)
        .def("__str__", &PcpInstance::str);

    m.def("gamma", &build_gamma);
    m.def("encode_word", [](const std::string& w) { return encode_word(Word::parse(w)); });
    m.def("encode_word_pure", [](const std::string& w) { return encode_word_pure(Word::parse(w)); });
    m.def(
        "verify_solution",
        [](const PcpInstance& inst, const std::vector<std::size_t>& seq) { return verify_solution(inst, to_seq(seq)); },
        py::arg("instance"), py::arg("solution"));
    m.def(
        "solve_pcp_bounded",
        [](const PcpInstance& inst, std::size_t max_len) -> std::optional<std::vector<std::size_t>> {
            auto sol = solve_pcp_bounded(inst, max_len);
            if (!sol)
                return std::nullopt;
            return sol->one_based();
        },
        py::arg("instance"), py::arg("max_len") = kDefaultMaxLen);
    m.def("build_reduction_term", &build_reduction_term, py::arg("instance"));

    py::class_<Witness>(m, "Witness")
        .def_readonly("delta", &Witness::delta)
        .def_readonly("term", &Witness::term)
        .def("export", [](const Witness& w) { return export_witness(w); })
        .def_static("parse", [](const std::string& text) { return import_witness(text); });
    m.def(
        "build_witness",
        [](const PcpInstance& inst, const std::vector<std::size_t>& seq) { return build_witness(inst, to_seq(seq)); },
        py::arg("instance"), py::arg("solution"));

    py::class_<EquationCheck>(m, "EquationCheck")
        .def_readonly("family", &EquationCheck::family)
        .def_readonly("label", &EquationCheck::label)
        .def_readonly("holds", &EquationCheck::holds);
    py::class_<ForwardReport>(m, "ForwardReport")
        .def_readonly("equations", &ForwardReport::equations)
        .def_readonly("delta_normal", &ForwardReport::delta_normal)
        .def_property_readonly("extracted",
                               [](const ForwardReport& r) -> std::optional<std::vector<std::size_t>> {
                                   if (!r.extracted)
                                       return std::nullopt;
                                   return r.extracted->one_based();
                               })
        .def("all_hold", &ForwardReport::all_hold);
    m.def("demonstrate_forward_equations",
          [](const PcpInstance& inst, const Witness& w) { return demonstrate_forward_equations(inst, w); },
          py::arg("instance"), py::arg("witness"));
}
