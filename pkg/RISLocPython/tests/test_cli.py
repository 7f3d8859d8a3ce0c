import os
import csv
import json

import pytest

from RISLocPython import cli
from RISLocPython.settings import VERSION

SMALL_SUITE = {'geometry': {'ris_array': {'rows': 4, 'cols': 4}, 'bs_array': {'rows': 2, 'cols': 2}},
               'signal': {'n_subcarriers': 4},
               'sweep': {'seeds': 2, 'rank_draws': 4, 'time_space_seeds': 2, 'monotonic_pairs': 2}}
SMALL_MAP = {'geometry': {'ris_array': {'rows': 4, 'cols': 4}, 'bs_array': {'rows': 2, 'cols': 2}},
             'signal': {'n_subcarriers': 4},
             'sweep': {'x': [2.0, 6.0, 2], 'y': [-2.0, 2.0, 2]}}


def _write(tmp_path, name, data):
    path = os.path.join(str(tmp_path), name)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    return(path)


def test_parser():
    args = cli.build_parser().parse_args(['peb-map', '--seed', '7', '--threads', '2', '--out', 'runs'])
    assert args.command == 'peb-map'
    assert (args.seed, args.threads, args.out, args.scale) == (7, 2, 'runs', None)
    assert set(cli.RUNNERS) == {'peb-map', 'efi-sweep', 'gain-compare', 'focus-eval', 'prop-suite'}
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(['peb-map', '--seed', '-1'])
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(['peb-map', '--threads', '0'])
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(['peb-map', '--mis-flag'])


def test_version(capsys):
    with pytest.raises(SystemExit):
        cli.main(['--version'])
    assert VERSION in capsys.readouterr().out


def test_prop_suite_command(tmp_path, capsys):
    config = _write(tmp_path, 'suite.json', SMALL_SUITE)
    out = os.path.join(str(tmp_path), 'out')
    assert cli.main(['prop-suite', '--config', config, '--out', out]) == 0
    assert 'prop-suite summary' in capsys.readouterr().out
    with open(os.path.join(out, 'prop-suite.json'), encoding='utf-8') as f:
        assert json.load(f)['all_passed']
    assert cli.main(['prop-suite', '--config', config, '--out', out, '--mis-flag']) == 1


def test_peb_map_command(tmp_path):
    config = _write(tmp_path, 'map.json', SMALL_MAP)
    out = os.path.join(str(tmp_path), 'out')
    assert cli.main(['peb-map', '--config', config, '--out', out, '--seed', '3']) == 0
    with open(os.path.join(out, 'peb-map_grid.csv'), encoding='utf-8', newline='') as f:
        rows = list(csv.reader(f))
    assert rows[0] == ['x_m', 'y_m', 'd_ru_m', 'peb_m']
    assert len(rows) == 5
    with open(os.path.join(out, 'peb-map.json'), encoding='utf-8') as f:
        assert json.load(f)['config']['seed'] == 3


def test_bad_configuration(tmp_path, capsys):
    config = _write(tmp_path, 'bad.json', {'signal': {'n_subcarriers': 0}})
    assert cli.main(['peb-map', '--config', config, '--out', str(tmp_path)]) == 2
    assert 'error' in capsys.readouterr().err
    assert cli.main(['peb-map', '--config', os.path.join(str(tmp_path), 'missing.json')]) == 2


def test_output_is_deterministic(tmp_path):
    config = _write(tmp_path, 'map.json', SMALL_MAP)
    contents = []
    for threads in ('1', '3'):
        out = os.path.join(str(tmp_path), 'run' + threads)
        assert cli.main(['peb-map', '--config', config, '--out', out, '--threads', threads]) == 0
        with open(os.path.join(out, 'peb-map_grid.csv'), 'rb') as f:
            contents.append(f.read())
    assert contents[0] == contents[1]
