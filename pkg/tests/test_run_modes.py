"""
run_modes 测试：命令解析与命令配置
"""
import pytest

from hochschild_bench.run_modes import COMMAND_CONFIGS, Command, get_command_config, get_command_from_string


class TestCommandFromString:
    @pytest.mark.parametrize("text, command", [
        ('hh', Command.HH),
        ('HHSG', Command.HHSG),
        ('gh_table', Command.GH_TABLE),
        ('chi', Command.EULER),
        ('check', Command.VALIDATE),
        ('invariance', Command.INVARIANCE_CHECK),
        ('retract-check', Command.RETRACT_CHECK),
    ])
    def test_names_and_aliases(self, text, command):
        assert get_command_from_string(text) is command

    def test_unknown(self):
        with pytest.raises(ValueError, match='Unknown command'):
            get_command_from_string('homotopy')


class TestCommandConfig:
    def test_every_command_configured(self):
        assert set(COMMAND_CONFIGS) == set(Command)
        for command, config in COMMAND_CONFIGS.items():
            assert config.command is command
            low, high = config.default_window
            assert low <= high

    def test_morphism_commands(self):
        needs = {c for c in Command if get_command_config(c).needs_morphism}
        assert needs == {Command.TRANSPORT, Command.INVARIANCE_CHECK}

    def test_sampling_commands(self):
        assert get_command_config(Command.RETRACT_CHECK).uses_samples
        assert not get_command_config(Command.HH).uses_samples
