import pytest

from scripts.core.models import ConfigurationError
from scripts.utils.config_loader import ConfigLoader


def test_reads_json_and_dot_keys(tmp_path):
    path = tmp_path / "exp.json"
    path.write_text('{"scheme": "unshielded", "noise": {"snr_db": [10, 20]}}', encoding="utf-8")
    loader = ConfigLoader(path)
    assert loader.get("scheme") == "unshielded"
    assert loader.get("noise.snr_db") == [10, 20]
    assert loader.get("noise.missing", "fallback") == "fallback"
    assert loader.require("scheme") == "unshielded"
    with pytest.raises(ConfigurationError, match="trials"):
        loader.require("trials")


def test_reads_yaml(tmp_path):
    path = tmp_path / "exp.yaml"
    path.write_text("scheme: fixed_guard\nK: 2\n", encoding="utf-8")
    assert ConfigLoader(path).as_dict() == {"scheme": "fixed_guard", "K": 2}


@pytest.mark.parametrize("text", ["{not json", "- a list\n- of items\n", ""])
def test_bad_documents(tmp_path, text):
    path = tmp_path / "bad.json"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ConfigurationError):
        ConfigLoader(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigurationError, match="not found"):
        ConfigLoader(tmp_path / "nope.json")


def test_wraps_a_parsed_mapping():
    loader = ConfigLoader("inline", {"K": 2, "noise": {"snr_db": 10}})
    assert loader.require("K") == 2
    assert loader.get("noise.snr_db") == 10
    with pytest.raises(ConfigurationError, match="inline: missing required key 'q'"):
        loader.require("q")
    with pytest.raises(ConfigurationError, match="mapping"):
        ConfigLoader("inline", [1, 2])
