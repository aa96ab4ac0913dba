"""Tests for the olrwa-bench command line harness."""

import io
import json

import pandas as pd
import pytest

from olrwa.config import DEFAULT_CONFIG
from olrwa_bench import BASE_COLUMNS, ExperimentResult, _gen_spec, build_parser, main, summarize_results

FAST = ['--no-timestamp', '--quiet']


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def read_results(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), comment='#')


class TestSynthetic:

    def test_five_trials(self, capsys):
        code, out = run_cli(capsys, 'synthetic', '--dim', '2', '--n', '200', '--mode', 'consistent',
                            '--trials', '5', '--seed', '7', *FAST)
        assert code == 0
        frame = read_results(out)
        assert list(frame.columns) == BASE_COLUMNS
        assert frame['trial'].tolist() == [0, 1, 2, 3, 4]
        assert (frame['batch_r2'] <= 1).all() and (frame['online_r2'] <= 1).all()
        assert ((frame['gap'] - (frame['batch_r2'] - frame['online_r2'])).abs() <= 2e-6).all()

    def test_six_decimals(self, capsys):
        _, out = run_cli(capsys, 'synthetic', '--trials', '1', *FAST)
        row = out.splitlines()[1].split(',')
        assert all(len(value.split('.')[1]) == 6 for value in row[1:])

    def test_timestamp_header(self, capsys):
        code, out = run_cli(capsys, 'synthetic', '--trials', '1', '--quiet')
        assert code == 0
        assert out.startswith('# generated_at: ')
        assert len(read_results(out)) == 1

    def test_byte_identical_reruns(self, capsys):
        argv = ['synthetic', '--dim', '3', '--trials', '3', '--seed', '11', '--no-timing', *FAST]
        _, first = run_cli(capsys, *argv)
        _, second = run_cli(capsys, *argv)
        assert first == second

    def test_parallel_trials_keep_order(self, capsys):
        argv = ['synthetic', '--trials', '4', '--no-timing', *FAST]
        _, serial = run_cli(capsys, *argv)
        _, parallel = run_cli(capsys, *argv, '--jobs', '2')
        assert serial == parallel

    def test_shifting_mode(self, capsys):
        code, out = run_cli(capsys, 'synthetic', '--mode', 'shifting', '--dim', '3', '--trials', '2', *FAST)
        assert code == 0
        assert len(read_results(out)) == 2

    @pytest.mark.parametrize("flags, expected", [
        (['--variance', '10'], (10.0, 60.0)),
        (['--variance', '10', '--variance2', '12'], (10.0, 12.0)),
        ([], (140.0, 840.0)),
    ])
    def test_shifting_variances(self, flags, expected):
        args = build_parser().parse_args(['synthetic', '--mode', 'shifting', *flags])
        spec, variance2 = _gen_spec(args, DEFAULT_CONFIG, 0, 'shifting')
        assert (spec.variance, variance2) == pytest.approx(expected)

    def test_insufficient_data_is_usage_error(self, capsys, caplog):
        code, out = run_cli(capsys, 'synthetic', '--n', '1', *FAST)
        assert code == 2
        assert out == ''
        assert 'InsufficientData' in caplog.text

    def test_bad_flag(self, capsys):
        assert main(['synthetic', '--dim', '5']) == 2

    def test_unknown_command(self, capsys):
        assert main(['plot']) == 2

    def test_zero_trials(self, capsys):
        assert main(['synthetic', '--trials', '0', *FAST]) == 2

    def test_non_positive_weight(self, capsys):
        assert main(['synthetic', '--policy', 'fixed-model', '--w-base', '0', *FAST]) == 2

    def test_zero_noise_recovers_line(self, capsys):
        for policy in ('fixed-point', 'fixed-model', 'time', 'confidence'):
            _, out = run_cli(capsys, 'synthetic', '--variance', '0', '--policy', policy, '--trials', '2', *FAST)
            frame = read_results(out)
            assert (frame['online_r2'] == 1.0).all()
            assert (frame['batch_r2'] == 1.0).all()

    def test_with_lms(self, capsys):
        code, out = run_cli(capsys, 'synthetic', '--trials', '2', '--with-lms', *FAST)
        assert code == 0
        frame = read_results(out)
        assert list(frame.columns) == BASE_COLUMNS + ['lms_r2', 'runtime_ms_lms']
        assert (frame['lms_r2'] <= 1).all()

    def test_lms_divergence_is_runtime_error(self, capsys, caplog):
        code = main(['synthetic', '--trials', '1', '--with-lms', '--lms-rate', '1', *FAST])
        assert code == 1
        assert 'Divergence' in caplog.text


class TestAdversarial:

    def test_half_columns(self, capsys):
        code, out = run_cli(capsys, 'adversarial', '--policy', 'confidence', '--trials', '2', *FAST)
        assert code == 0
        frame = read_results(out)
        assert list(frame.columns) == BASE_COLUMNS + ['r2_first_half', 'r2_second_half']

    def test_confidence_keeps_first_half(self, capsys):
        _, out = run_cli(capsys, 'adversarial', '--policy', 'confidence', '--trials', '3', *FAST)
        frame = read_results(out)
        assert (frame['r2_first_half'] > frame['r2_second_half']).all()

    def test_time_follows_second_half(self, capsys):
        _, out = run_cli(capsys, 'adversarial', '--policy', 'time', '--trials', '3', *FAST)
        frame = read_results(out)
        assert (frame['r2_second_half'] > frame['r2_first_half']).all()


class TestCsv:

    def test_runs_on_file(self, capsys, linear_csv):
        code, out = run_cli(capsys, 'csv', '--input', linear_csv, '--target', 'y',
                            '--features', 'a,b', '--trials', '3', *FAST)
        assert code == 0
        frame = read_results(out)
        assert len(frame) == 3
        assert (frame['batch_r2'] > 0.9).all()

    def test_missing_file(self, capsys, caplog, tmp_path):
        code = main(['csv', '--input', str(tmp_path / 'absent.csv'), '--target', 'y',
                     '--features', 'a', *FAST])
        assert code == 1
        assert 'FileNotFound' in caplog.text

    def test_missing_column(self, capsys, caplog, linear_csv):
        code = main(['csv', '--input', linear_csv, '--target', 'y', '--features', 'a,zzz', *FAST])
        assert code == 1
        assert 'MissingColumn' in caplog.text

    def test_ragged_rows_are_runtime_error(self, capsys, write_csv):
        path = write_csv("a,y\n1,10,100\n2,20,200\n3,30,300\n")
        code = main(['csv', '--input', path, '--target', 'y', '--features', 'a', *FAST])
        assert code == 1
        assert capsys.readouterr().out == ''

    def test_target_listed_as_feature(self, capsys, linear_csv):
        assert main(['csv', '--input', linear_csv, '--target', 'y', '--features', 'a,y', *FAST]) == 2

    def test_missing_required_flag(self, capsys):
        assert main(['csv', '--target', 'y', '--features', 'a']) == 2


class TestOutputs:

    def test_out_summary_and_traces(self, capsys, tmp_path):
        out = tmp_path / 'results' / 'exp1.csv'
        summary = tmp_path / 'summary.json'
        traces = tmp_path / 'traces'
        code = main(['synthetic', '--trials', '2', '--out', str(out), '--summary', str(summary),
                     '--trace-dir', str(traces), *FAST])
        assert code == 0
        assert capsys.readouterr().out == ''
        assert len(read_results(out.read_text())) == 2

        stats = json.loads(summary.read_text())
        assert stats['trials'] == 2
        assert set(stats['gap']) == {'min', 'median', 'max'}

        trace = json.loads((traces / 'trial_001.json').read_text())
        assert trace['seed'] == 43
        assert len(trace['trace']) == 18
        assert {'chosen', 'mse_candidate_1', 'w_base', 'skipped'} <= set(trace['trace'][0])

    def test_config_file(self, capsys, tmp_path):
        config = tmp_path / 'config.json'
        config.write_text(json.dumps({'run': {'trials': 3}}))
        _, out = run_cli(capsys, 'synthetic', '--config', str(config), *FAST)
        assert len(read_results(out)) == 3

    def test_missing_config_file(self, capsys, tmp_path):
        assert main(['synthetic', '--config', str(tmp_path / 'none.json'), *FAST]) == 1


def test_gap_property():
    result = ExperimentResult(trial=0, batch_r2=0.93, online_r2=0.91, runtime_ms_batch=1.0,
                              runtime_ms_online=2.0)
    assert abs(result.gap - (result.batch_r2 - result.online_r2)) <= 1e-12


def test_summary_statistics():
    results = [ExperimentResult(i, 0.9 + i / 100, 0.9, 1.0, 1.0) for i in range(3)]
    summary = summarize_results(results)
    assert summary['batch_r2'] == pytest.approx({'min': 0.9, 'median': 0.91, 'max': 0.92})
    assert 'r2_first_half' not in summary
