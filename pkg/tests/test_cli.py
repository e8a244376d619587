import json

import pytest

from factn import ambient, factcat, frobenius, homotopy, repositories, services, triangles
from factn.config import get_settings
from factn.main import EXIT_ERROR, EXIT_FAILED, EXIT_OK, build_parser, command_table, run_command
from tests.conftest import CORPUS

pytestmark = pytest.mark.usefixtures("restore_logging")

XY = str(CORPUS / "xy.json")
FP5 = str(CORPUS / "fp5.json")
CONCENTRATED = str(CORPUS / "concentrated.json")


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def _run(capsys, argv):
    code = run_command(argv)
    return code, capsys.readouterr().out


# ============================================
# Exit codes
# ============================================

class TestValidate:
    def test_valid_document(self, capsys):
        code, out = _run(capsys, ["validate", XY])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["summary"] == {"pass": 6, "fail": 0}
        assert "X.factorization.composite" in {c["name"] for c in report["checks"]}
        assert all(len(c["inputs_digest"]) == 16 for c in report["checks"])

    def test_input_flag(self, capsys):
        code, _ = _run(capsys, ["validate", "--input", XY])
        assert code == EXIT_OK

    def test_invalid_payload(self, capsys):
        code, out = _run(capsys, ["validate", str(CORPUS / "bad_xx.json")])
        assert code == EXIT_ERROR
        failure = next(c for c in json.loads(out)["checks"] if not c["pass"])
        assert failure["name"] == "factorization.composite"
        assert failure["index"] == 0

    def test_missing_file(self, tmp_path):
        assert run_command(["validate", str(tmp_path / "missing.json")]) == EXIT_ERROR

    def test_missing_document(self):
        assert run_command(["validate"]) == EXIT_ERROR


class TestCommands:
    def test_suite(self, capsys):
        code, out = _run(capsys, ["suite", "--backend", FP5, "--n", "4", "--samples", "3", "--seed", "7"])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["seed"] == 7
        assert any(c["name"].startswith("RTR4.") for c in report["checks"])

    def test_paper_deflation_fails_at_component_two(self, capsys):
        code, out = _run(capsys, ["frobenius", CONCENTRATED, "--deflation", "--mode", "paper"])
        assert code == EXIT_FAILED
        failures = [c for c in json.loads(out)["checks"] if not c["pass"]]
        assert [(c["name"], c["index"]) for c in failures] == [("deflation.paper.surjective", 2)]

    def test_full_deflation(self, capsys):
        code, _ = _run(capsys, ["frobenius", CONCENTRATED, "--deflation", "--mode", "full"])
        assert code == EXIT_OK

    def test_iso(self, capsys):
        code, out = _run(capsys, ["iso", XY, "--f", "id"])
        assert code == EXIT_OK
        assert json.loads(out)["artifacts"]["inverse"]["comps"] == [[["1"]], [["1"]]]

    def test_solve_reports_unknown(self, capsys):
        code, out = _run(capsys, ["homotopy", XY, "--solve", "--f", "id", "--g", "zero", "--bound", "1"])
        assert code == EXIT_FAILED
        assert json.loads(out)["checks"][0]["detail"].startswith("unknown")

    def test_theta(self, capsys):
        code, out = _run(capsys, ["theta", "--backend", FP5, "--n", "4", "--s", "1", "--rank", "2"])
        assert code == EXIT_OK
        assert json.loads(out)["artifacts"]["theta"]["ranks"] == [2, 2, 2, 2]


# ============================================
# Usage errors
# ============================================

class TestUsage:
    def test_randomized_needs_seed(self):
        assert run_command(["coherence", "--backend", FP5]) == EXIT_ERROR

    def test_unknown_name(self):
        assert run_command(["iso", XY, "--f", "nope"]) == EXIT_ERROR

    def test_unknown_subcommand(self):
        assert run_command(["nope"]) == EXIT_ERROR

    def test_bad_settings(self, monkeypatch):
        monkeypatch.setenv("FACTN_THREADS", "0")
        assert run_command(["validate", XY]) == EXIT_ERROR

    def test_two_inputs(self):
        assert run_command(["validate", XY, "--input", FP5]) == EXIT_ERROR


# ============================================
# Determinism and output
# ============================================

class TestOutput:
    def test_deterministic(self, capsys):
        argv = ["random", "--backend", FP5, "--n", "2", "--seed", "3"]
        first = _run(capsys, argv)
        second = _run(capsys, argv)
        assert first == second
        assert first[0] == EXIT_OK

    def test_seed_changes_output(self, capsys):
        _, first = _run(capsys, ["random", "--backend", FP5, "--n", "2", "--seed", "3"])
        _, second = _run(capsys, ["random", "--backend", FP5, "--n", "2", "--seed", "4"])
        assert json.loads(first)["seed"] == 3
        assert first != second

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.json"
        code, out = _run(capsys, ["validate", XY, "--out", str(target)])
        assert code == EXIT_OK
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["tool"] == "factn"

    def test_random_document_loads(self, capsys, tmp_path):
        _, out = _run(capsys, ["random", "--backend", FP5, "--n", "4", "--seed", "11"])
        target = tmp_path / "random.json"
        target.write_text(json.dumps(json.loads(out)["artifacts"]["document"]), encoding="utf-8")
        doc = repositories.load_document(target)
        assert set(doc.factorizations) == {"X", "Y"}


# ============================================
# Command table
# ============================================

REQUIRED = {
    "load_document", "validate_factorization", "validate_morphism", "direct_sum", "shift_S",
    "is_isomorphism", "random_factorization", "random_morphism", "check_omega_coherence",
    "check_adjunction_identities", "suspend", "unsuspend", "mapping_cone", "cone_triangle",
    "contract_identity_cone", "rotate", "fill_morphism", "octahedron", "cone_homotopy_iso",
    "verify_homotopy", "solve_homotopy", "is_contractible", "homotopy_classes_respect_ops",
    "kernel", "cokernel", "is_conflation", "pullback_deflation", "pushout_inflation",
    "theta0", "theta1", "theta_s", "project", "transpose", "canonical_deflation",
    "canonical_inflation", "probe_projective", "probe_injective", "stably_zero", "run_axiom_suite",
}


class TestCommandTable:
    def test_each_operation_has_one_command(self):
        operations = [op for command in command_table() for op in command.operations]
        assert len(operations) == len(set(operations))

    def test_required_operations_covered(self):
        operations = {op for command in command_table() for op in command.operations}
        assert REQUIRED <= operations

    def test_operations_exist(self):
        modules = (ambient, factcat, frobenius, homotopy, repositories, services, triangles)
        for command in command_table():
            for op in command.operations:
                assert any(hasattr(module, op) for module in modules), op

    def test_parser_knows_every_command(self):
        extra = {
            "homotopy": ["--verify"],
            "frobenius": ["--deflation"],
            "probe": ["--projective"],
            "transpose": ["--adj", "1", "--dir", "fwd"],
        }
        parser = build_parser()
        for command in command_table():
            args = parser.parse_args([command.name, *extra.get(command.name, [])])
            assert args.handler is command
