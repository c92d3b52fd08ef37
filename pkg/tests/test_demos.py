"""The narrative scripts in demos/ run to completion."""
import runpy
from pathlib import Path

import pytest

DEMOS = sorted((Path(__file__).parent.parent / 'demos').glob('*.py'))


@pytest.mark.parametrize('path', DEMOS, ids=lambda p: p.stem)
def test_demo_runs(path, capsys):
    runpy.run_path(str(path), run_name='__main__')
    assert capsys.readouterr().out


CONFIGS = sorted((Path(__file__).parent.parent / 'demos' / 'configs').glob('*.ini'))


@pytest.mark.parametrize('path', CONFIGS, ids=lambda p: p.stem)
def test_demo_config_certifies(path, capsys):
    from dsmopt.cli import main
    assert main(['certify', '--config', str(path)]) in (0, 2)
    assert capsys.readouterr().out.lstrip().startswith('{')
