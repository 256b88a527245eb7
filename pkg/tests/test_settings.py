"""
設定模組測試
"""

import pytest

from config.settings import Settings, settings


class TestSettings:
    """測試環境設定驗證"""

    def test_defaults_are_valid(self):
        assert settings.validate_config()
        assert settings.MAX_NODES > 0
        assert settings.EXPORT_PATH.name

    @pytest.mark.parametrize(
        "name, value",
        [
            ("PARALOGIC_MODE", "classical"),
            ("PARALOGIC_OUTPUT", "xml"),
            ("MAX_NODES", 0),
            ("EXHAUSTIVE_LIMIT", -1),
        ],
    )
    def test_invalid_values(self, mocker, name, value):
        mocker.patch.object(Settings, name, value)
        with pytest.raises(ValueError):
            Settings.validate_config()

    def test_environment_check_in_main(self, mocker):
        import main

        assert main.validate_environment()
        mocker.patch.object(Settings, "PARALOGIC_MODE", "classical")
        assert not main.validate_environment()

    def test_cli_falls_back_to_settings(self, mocker, tmp_path):
        from cli.app import build_config, build_parser

        mocker.patch.object(Settings, "PARALOGIC_MODE", "internal")
        mocker.patch.object(Settings, "MAX_ARGUMENTS", 7)
        args = build_parser().parse_args(["entail", str(tmp_path / "x.kb"), "a : C"])
        config = build_config(args)
        assert config.mode == "internal"
        assert config.max_args == 7
        args = build_parser().parse_args(["entail", "x.kb", "a : C", "--mode", "material"])
        assert build_config(args).mode == "material"
