import logging

import pytest

from src.cirquents.cl15.search import SearchMode
from src.logic.errors import ConfigError
from src.settings import Settings, configure_logging, load_settings, settings_from_dict, with_overrides
from src.tests.conftest import ROOT
from src.ui.engines import cl15_config


def test_bundled_config_matches_defaults():
    assert load_settings() == Settings()


def test_missing_sections_fall_back(tmp_path):
    path = tmp_path / "partial.yaml"
    path.write_text("cl15:\n  contraction_budget: 2\n", encoding="utf-8")
    settings = load_settings(path)
    assert settings.cl15.contraction_budget == 2
    assert settings.cl15.max_proof_length == 64
    assert settings.bruteforce == Settings().bruteforce


def test_empty_file_is_default(tmp_path):
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_settings(path) == Settings()


@pytest.mark.parametrize(
    "data",
    [
        {"cl5": {"ars_bound": 3}},
        {"provers": {}},
        {"games": [1, 2]},
    ],
)
def test_rejected_shapes(data):
    with pytest.raises(ConfigError):
        settings_from_dict(data)


def test_app_section_is_ignored():
    assert settings_from_dict({"app": {"name": "x"}}) == Settings()


def test_explicit_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_settings(tmp_path / "nope.yaml")


def test_bad_yaml(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("cl5: [unclosed\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_settings(path)


def test_overrides_reach_every_engine():
    settings = with_overrides(Settings(), max_nodes=5, timeout_ms=10)
    assert settings.bruteforce.max_nodes == 5
    assert settings.cl5.search_max_nodes == 5
    assert settings.cl15.max_nodes == 5
    assert settings.cl15.timeout_ms == 10
    assert with_overrides(settings) == settings


def test_cl15_search_config():
    assert cl15_config(Settings()).mode is SearchMode.BOUNDED
    config = cl15_config(with_overrides(Settings(), mode="cl15c"))
    assert config.mode is SearchMode.CL15C
    assert config.contraction_budget == 0


def test_manifest_path_is_repo_relative():
    assert Settings().corpus.manifest_path() == ROOT / "corpus" / "worked" / "manifest.jsonl"


class TestLogging:
    def test_verbosity_lowers_the_level(self):
        root = logging.getLogger()
        before = root.level
        try:
            configure_logging(Settings(), 2)
            assert root.level == logging.DEBUG
            configure_logging(Settings(), 1)
            assert root.level == logging.INFO
        finally:
            root.setLevel(before)

    def test_unknown_level(self):
        settings = settings_from_dict({"logging": {"level": "LOUD"}})
        with pytest.raises(ConfigError):
            configure_logging(settings)
