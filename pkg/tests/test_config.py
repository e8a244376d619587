import json
import logging
import re

import pytest
from pydantic import ValidationError

import factn.utils
from factn.config import Settings
from factn.schemas.report import CheckResult, Report, check
from factn.utils import derive_rng, derive_seed, inputs_digest, setup_logging
from factn.utils.logging import ColoredFormatter
from tests.conftest import CORPUS, mat


# ============================================
# Settings
# ============================================

class TestSettings:
    def test_defaults(self, monkeypatch):
        for name in ("THREADS", "LOG_LEVEL", "LOG_FILE", "LOG_FORMAT", "DEFAULT_SAMPLES", "MAX_RANK"):
            monkeypatch.delenv(f"FACTN_{name}", raising=False)
        settings = Settings(_env_file=None)
        assert settings.THREADS == 1
        assert settings.LOG_LEVEL == "WARNING"
        assert settings.log_file_path is None
        assert settings.DEFAULT_SAMPLES == 20

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("FACTN_THREADS", "4")
        monkeypatch.setenv("FACTN_LOG_LEVEL", "debug")
        settings = Settings(_env_file=None)
        assert settings.THREADS == 4
        assert settings.LOG_LEVEL == "DEBUG"

    @pytest.mark.parametrize("name,value", [
        ("FACTN_THREADS", "0"),
        ("FACTN_MAX_RANK", "-1"),
        ("FACTN_LOG_LEVEL", "chatty"),
        ("FACTN_LOG_FORMAT", "xml"),
    ])
    def test_invalid(self, monkeypatch, name, value):
        monkeypatch.setenv(name, value)
        with pytest.raises(ValidationError):
            Settings(_env_file=None)


# ============================================
# Logging
# ============================================

class TestLogging:
    def test_json_lines(self, restore_logging, tmp_path):
        log_file = tmp_path / "logs" / "factn.log"
        setup_logging("INFO", str(log_file), "json")
        logging.getLogger("factn.test").info("🔍 probe")
        for handler in logging.getLogger().handlers:
            handler.flush()
        record = json.loads(log_file.read_text(encoding="utf-8").splitlines()[-1])
        assert record["message"] == "🔍 probe"
        assert record["levelname"] == "INFO"

    def test_level(self, restore_logging):
        setup_logging("error")
        assert logging.getLogger().level == logging.ERROR

    def test_colored_console_leaves_record_alone(self):
        record = logging.LogRecord("factn", logging.WARNING, __file__, 1, "careful", None, None)
        text = ColoredFormatter("%(levelname)s %(message)s").format(record)
        assert text.startswith("\033[") and text.endswith("careful")
        assert record.levelname == "WARNING"


def test_exported_utilities_are_used():
    package = CORPUS.parent / "factn"
    sources = "\n".join(
        path.read_text(encoding="utf-8") for path in package.rglob("*.py") if path.parent.name != "utils"
    )
    for name in factn.utils.__all__:
        assert re.search(rf"\b{name}\b", sources), name


# ============================================
# Reports
# ============================================

class TestReport:
    def test_summary_and_alias(self, qxy):
        report = Report().add(check("a", True)).add(check("b", False, index=1, lhs=mat(qxy, [["x"]]),
                                                           rhs=mat(qxy, [["y"]])))
        payload = json.loads(report.to_json())
        assert payload["summary"] == {"pass": 1, "fail": 1}
        assert payload["checks"][0]["pass"] is True
        assert payload["checks"][1]["lhs"] == [["x"]]
        assert report.describe_failure() == "b failed at index 1"

    def test_sides_only_on_failure(self, qxy):
        passed = check("a", True, lhs=mat(qxy, [["x"]]), rhs=mat(qxy, [["x"]]))
        assert passed.lhs is None and passed.rhs is None

    def test_prefixed(self):
        report = Report().add(check("square", True, index=0))
        renamed = report.prefixed("f", seed=5)
        assert isinstance(renamed, list)
        assert renamed[0].name == "f.square"
        assert renamed[0].seed == 5
        assert report.checks[0].name == "square"

    def test_trailing_newline(self):
        text = Report(seed=3).to_json()
        assert text.endswith("}\n")
        assert list(json.loads(text)) == sorted(json.loads(text))

    def test_alias_input(self):
        assert CheckResult.model_validate({"name": "a", "pass": False}).passed is False


# ============================================
# Seeding
# ============================================

class TestSeeding:
    def test_derive_rng(self):
        assert derive_rng(7, "suite", 0).random() == derive_rng(7, "suite", 0).random()
        assert derive_rng(7, "suite", 0).random() != derive_rng(7, "suite", 1).random()

    def test_derive_seed(self):
        seed = derive_seed(derive_rng(1, "x"))
        assert 0 <= seed < 2 ** 63
        assert seed == derive_seed(derive_rng(1, "x"))

    def test_inputs_digest(self):
        digest = inputs_digest({"a": 1, "b": [1, 2]})
        assert len(digest) == 16
        int(digest, 16)
        assert digest == inputs_digest({"b": [1, 2], "a": 1})
        assert digest != inputs_digest({"a": 2, "b": [1, 2]})
