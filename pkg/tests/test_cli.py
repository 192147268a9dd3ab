"""Command-line surface: schemas, exit codes, and the analyze/realize loop."""

import json
import random
import subprocess
import sys

FOUR_CIRCLE_CONFIG = {"q_genus": 1, "components": [{"genus": 1, "boundary_count": 4}]}


def run_cli(args):
    cmd = [sys.executable, "-m", "torelli.cli", *args]
    return subprocess.run(cmd, capture_output=True, text=True)


def write_json(path, payload):
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def four_circle_class(indices):
    # ambient coordinates for the genus-five model of the four-circle example:
    # qa qb | pa pb | circle 1..3 | dual 1..3, with circle 0 = -(1+2+3)
    cls = [0] * 10
    for i in indices:
        if i == 0:
            for k in (4, 5, 6):
                cls[k] -= 1
        else:
            cls[3 + i] += 1
    return cls


def test_analyze_empty_word(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    word = write_json(tmp_path / "word.json", {"factors": []})
    result = run_cli(["analyze", "--config", config, "--word", word])
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["weakly_torelli"] is True
    assert report["extension_by_identity_torelli"] is True
    assert report["extendable_to_torelli"] is True
    assert report["delta"]["matrix"] == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert report["multitwist_correctable"] == [0, 0, 0, 0]


def test_analyze_regression_fixture(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    word = write_json(
        tmp_path / "word.json",
        {"factors": [{"class": four_circle_class([0, 1]), "exponent": 1, "locus": "Q"}]},
    )
    result = run_cli(["analyze", "--config", config, "--word", word])
    assert result.returncode == 0, result.stderr
    report = json.loads(result.stdout)
    assert report["weakly_torelli"] is True
    assert report["symmetric"] is True
    assert report["completely_reducible"] is True
    assert report["extendable_to_torelli"] is True
    assert report["extension_by_identity_torelli"] is False
    assert report["multitwist_correctable"] is None


def test_analyze_text_format_matches_json(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    word = write_json(
        tmp_path / "word.json",
        {"factors": [{"class": four_circle_class([0, 1]), "exponent": 2, "locus": "Q"}]},
    )
    as_json = json.loads(run_cli(["analyze", "--config", config, "--word", word]).stdout)
    as_text = run_cli(["analyze", "--config", config, "--word", word, "--format", "text"])
    assert as_text.returncode == 0
    lines = dict(
        line.split(": ", 1) for line in as_text.stdout.splitlines() if ": " in line
    )
    for field in (
        "weakly_torelli",
        "symmetric",
        "completely_reducible",
        "extension_by_identity_torelli",
        "extendable_to_torelli",
    ):
        assert lines[field] == ("true" if as_json[field] else "false")
    assert lines["multitwist_correctable"] == "none"


def test_analyze_flags_non_primitive_class(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    doubled = [2 * e for e in four_circle_class([0, 1])]
    word = write_json(
        tmp_path / "word.json",
        {"factors": [{"class": doubled, "exponent": 1, "locus": "Q"}]},
    )
    result = run_cli(["analyze", "--config", config, "--word", word])
    assert result.returncode == 0, result.stderr
    assert "non-primitive" in result.stderr
    report = json.loads(result.stdout)
    assert report["weakly_torelli"] is True


def test_analyze_rejects_ambient_factor(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    word = write_json(
        tmp_path / "word.json",
        {"factors": [{"class": four_circle_class([1]), "exponent": 1, "locus": "S"}]},
    )
    result = run_cli(["analyze", "--config", config, "--word", word])
    assert result.returncode == 3
    assert "locus" in result.stderr


def test_analyze_parse_errors(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    bad_word = tmp_path / "word.json"
    bad_word.write_text("{not json", encoding="utf-8")
    result = run_cli(["analyze", "--config", config, "--word", str(bad_word)])
    assert result.returncode == 2

    missing_field = write_json(tmp_path / "word2.json", {"factors": [{"exponent": 1}]})
    result = run_cli(["analyze", "--config", config, "--word", missing_field])
    assert result.returncode == 2
    assert "class" in result.stderr

    wrong_length = write_json(
        tmp_path / "word4.json",
        {"factors": [{"class": [0, 1], "exponent": 1, "locus": "Q"}]},
    )
    result = run_cli(["analyze", "--config", config, "--word", wrong_length])
    assert result.returncode == 3
    assert "factors[0].class" in result.stderr

    bad_config = write_json(tmp_path / "config2.json", {"q_genus": 1})
    word = write_json(tmp_path / "word3.json", {"factors": []})
    result = run_cli(["analyze", "--config", bad_config, "--word", word])
    assert result.returncode == 2
    assert "components" in result.stderr


def test_realize_zero_delta(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    delta = write_json(tmp_path / "delta.json", {"blocks": {"0": [[0, 0, 0], [0, 0, 0], [0, 0, 0]]}})
    result = run_cli(["realize", "--config", config, "--delta", delta])
    assert result.returncode == 0, result.stderr
    assert json.loads(result.stdout) == {"factors": []}


def test_realize_single_indicator_block(tmp_path):
    config = write_json(
        tmp_path / "config.json", {"q_genus": 0, "components": [{"genus": 1, "boundary_count": 3}]}
    )
    delta = write_json(tmp_path / "delta.json", {"blocks": {"0": [[1, 1], [1, 1]]}})
    result = run_cli(["realize", "--config", config, "--delta", delta])
    assert result.returncode == 0, result.stderr
    word = json.loads(result.stdout)
    assert len(word["factors"]) == 1
    assert word["factors"][0]["exponent"] == 1
    assert word["factors"][0]["locus"] == "Q"


def test_realize_asymmetric_exits_4(tmp_path):
    config = write_json(tmp_path / "config.json", FOUR_CIRCLE_CONFIG)
    delta = write_json(tmp_path / "delta.json", {"blocks": {"0": [[0, 1, 0], [0, 0, 0], [0, 0, 0]]}})
    result = run_cli(["realize", "--config", config, "--delta", delta])
    assert result.returncode == 4


def test_realize_cross_component_exits_5(tmp_path):
    config = write_json(
        tmp_path / "config.json",
        {"q_genus": 0, "components": [{"genus": 0, "boundary_count": 2}, {"genus": 0, "boundary_count": 2}]},
    )
    delta = write_json(tmp_path / "delta.json", {"matrix": [[0, 1], [1, 0]]})
    result = run_cli(["realize", "--config", config, "--delta", delta])
    assert result.returncode == 5


def test_analyze_of_realized_word_reports_same_delta(tmp_path):
    rng = random.Random(2718)
    config_payload = {"q_genus": 0, "components": [{"genus": 0, "boundary_count": 3}]}
    config = write_json(tmp_path / "config.json", config_payload)
    for trial in range(50):
        a, b, c = rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3)
        block = [[a, b], [b, c]]
        delta = write_json(tmp_path / f"delta{trial}.json", {"blocks": {"0": block}})
        realized = run_cli(["realize", "--config", config, "--delta", delta])
        assert realized.returncode == 0, realized.stderr
        word = write_json(tmp_path / f"word{trial}.json", json.loads(realized.stdout))
        analyzed = run_cli(["analyze", "--config", config, "--word", word])
        assert analyzed.returncode == 0, analyzed.stderr
        report = json.loads(analyzed.stdout)
        assert report["component_matrices"] == [block]
        assert report["weakly_torelli"] is True


def test_ranks_command(tmp_path):
    config = write_json(
        tmp_path / "config.json", {"q_genus": 0, "components": [{"genus": 0, "boundary_count": 4}]}
    )
    result = run_cli(["ranks", "--config", config])
    assert result.returncode == 0
    assert json.loads(result.stdout) == {"rank_K0": 3, "rank_H1bar": 3, "rank_Dc": 6}


def test_check_command_single_trial():
    result = run_cli(["check", "--seed", "5", "--trials", "1"])
    assert result.returncode == 0, result.stderr
    reports = json.loads(result.stdout)
    assert all(r["trials"] == 1 for r in reports)
    assert all(r["failures"] == [] for r in reports)
    again = run_cli(["check", "--seed", "5", "--trials", "1"])
    assert again.stdout == result.stdout


def test_example4_command():
    result = run_cli(["example4", "--m", "2"])
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["multitwist_correctable"] is None
    assert report["extendable_to_torelli"] is True
    assert report["extension_by_identity_torelli"] is False
