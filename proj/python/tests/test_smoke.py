import os
from pathlib import Path

import pytest

import lampi

DATA = Path(os.environ.get("LAMPI_DATA_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def gamma():
    return lampi.gamma()


def test_gamma(gamma):
    assert gamma.names == ["T", "a", "b", "c", "d", "P", "F"]
    lampi.check_context(gamma)
    assert lampi.infer_type(gamma, lampi.parse_term("F", gamma)).print(gamma) == "!x : T . P x -> T"


def test_kernel(gamma):
    t = lampi.parse_term("(\\x : T . a x) c", gamma)
    n = lampi.normalize(t)
    assert n.print(gamma) == "a c"
    assert lampi.convertible(t, lampi.parse_term("a c", gamma))
    assert lampi.is_object(gamma, t)
    assert not lampi.is_object(gamma, lampi.parse_term("P c", gamma))
    assert lampi.erase(t).print(gamma) == "(\\x . a x) c"
    with pytest.raises(lampi.TypeError):
        lampi.infer_type(gamma, lampi.parse_term("a T", gamma))
    with pytest.raises(lampi.FuelExhausted):
        lampi.normalize(lampi.parse_term("(\\x : T . x x) (\\x : T . x x)", gamma), fuel=1000)
    with pytest.raises(lampi.ParseError):
        lampi.parse_term("(a", gamma)


def test_encodings(gamma):
    assert lampi.encode_word("A").print(gamma) == "\\y : T . a ((\\y : T . y) y)"
    assert lampi.encode_word_pure("A").print(gamma) == "\\y . a ((\\y . y) y)"


def test_stlc():
    assert lampi.stlc_infer("\\f. \\x. f x") == "('a -> 'b) -> 'a -> 'b"
    assert lampi.stlc_infer("\\x. x x") is None
    delta, term = lampi.lift_to_lampi("\\f. \\x. f x")
    assert delta.names == ["o"]
    assert term.print(delta) == "\\f : o -> o . \\x : o . f x"
    ok, failure, _ = lampi.check_pure_typability_witness(
        lampi.Context(), delta, term, lampi.parse_pure_term("\\f. \\x. f x"))
    assert ok and failure == "ok"


def test_pcp(gamma):
    classic = lampi.PcpInstance.parse((DATA / "classic.pcp").read_text())
    assert len(classic) == 3
    assert lampi.solve_pcp_bounded(classic, 4) == [3, 2, 3, 1]
    assert lampi.verify_solution(classic, [3, 2, 3, 1])
    assert not lampi.verify_solution(classic, [3, 2, 3])
    assert lampi.solve_pcp_bounded(lampi.PcpInstance([("AB", "A")]), 8) is None

    witness = lampi.build_witness(classic, [3, 2, 3, 1])
    t = lampi.build_reduction_term(classic)
    ok, _, detail = lampi.check_pure_typability_witness(gamma, witness.delta, witness.term, t)
    assert ok, detail
    report = lampi.demonstrate_forward_equations(classic, witness)
    assert report.all_hold()
    assert report.extracted == [3, 2, 3, 1]
    assert {e.family for e in report.equations} == {
        "gamma", "beta-id", "beta-d", "delta", "delta-id", "delta-d"}

    again = lampi.Witness.parse(witness.export())
    assert again.term == witness.term

    with pytest.raises(lampi.PcpError):
        lampi.build_witness(classic, [1])
