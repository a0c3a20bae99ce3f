"""Tests for the command-line front end."""

import json

import pytest
from click.testing import CliRunner

from hecke_schurian import main
from hecke_schurian.main import cli


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, tmp_path, isolated_settings):
    cache_dir = tmp_path / "columns"

    def run(*args):
        return runner.invoke(cli, ["--cache-dir", str(cache_dir), *args])

    return run


def json_of(result):
    assert result.exit_code == 0, result.output
    return json.loads(result.stdout)


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "hecke-schurian" in result.output


def test_block_info_of_a_four_core(invoke):
    data = json_of(invoke("block-info", "--e", "4", "--core", "5,2,2", "--weight", "4", "--json"))
    assert data["runner_positions"] == [0, 1, 6, 11]
    assert data["bead_count"] == 7
    assert data["size"] == 25
    assert data["normalized_class"].startswith("[1,")


def test_block_info_from_a_class(invoke):
    data = json_of(invoke("block-info", "--e", "3", "--class", "[1,1,2]", "--weight", "4", "--json"))
    assert data["core"] == [2]
    assert data["class"] == "[1,1,2]"


def test_block_info_table(invoke):
    result = invoke("block-info", "--e", "3", "--class", "[1,4,7]", "--weight", "4")
    assert result.exit_code == 0
    assert "rouquier" in result.stdout


def test_quotient_both_ways(invoke):
    data = json_of(invoke("quotient", "--e", "4", "9,9,3,3,1", "--json"))
    assert data["core"] == [5, 2, 2]
    assert data["weight"] == 4
    assert data["quotient"] == [[1], [2, 1], [], []]

    back = json_of(
        invoke("quotient", "--e", "4", "--core", "5,2,2", "--components", "1|2,1||", "--json")
    )
    assert back["partition"] == [9, 9, 3, 3, 1]


def test_abacus_render(invoke):
    result = invoke("abacus", "--e", "3", "7,1")
    assert result.exit_code == 0
    assert "b" in result.stdout and "-" in result.stdout


def test_decomp_recognizes_the_dagger_target(invoke):
    data = json_of(invoke("decomp", "--e", "3", "--rows", "7,1;6,2;4,4;4,2,2", "--json"))
    assert data["target"] == "DAGGER"
    assert data["matrix"][0][0] == {"0": 1}
    assert data["matrix"][3][1] == {"2": 1}


def test_jantzen_row(invoke):
    data = json_of(invoke("jantzen", "--e", "3", "--p", "2", "1,1,1", "--json"))
    assert data["coeffs"] == {"3": -1, "2,1": 1}


def test_scopes_normalize_is_stable_on_normalized_classes(invoke):
    data = json_of(
        invoke("scopes-normalize", "--e", "3", "--class", "[1,2,3]", "--weight", "2", "--json")
    )
    assert data["class"] == data["normalized_class"] == "[1,2,3]"
    assert data["moves"] == []


def test_malformed_partition_is_a_usage_error(invoke):
    result = invoke("abacus", "--e", "3", "4,x")
    assert result.exit_code == 2
    assert "position" in result.output


def test_class_of_the_wrong_length_is_a_usage_error(invoke):
    result = invoke("block-info", "--e", "4", "--class", "[1,1,2]", "--weight", "2")
    assert result.exit_code == 2


def test_core_and_class_are_exclusive(invoke):
    result = invoke(
        "block-info", "--e", "3", "--core", "2", "--class", "[1,1,2]", "--weight", "2"
    )
    assert result.exit_code == 2


def test_domain_errors_exit_with_one(invoke):
    result = invoke("block-info", "--e", "3", "--core", "2,1", "--weight", "2")
    assert result.exit_code == 1
    assert "Error:" in result.stderr


def test_certify_then_replay(invoke, tmp_path):
    out = tmp_path / "cert.json"
    data = json_of(
        invoke(
            "certify", "--e", "3", "--p", "0", "--class", "[1,1,1]", "--weight", "2",
            "--json", "--output", str(out),
        )
    )
    assert data["verdict"] == "SCHURIAN_INFINITE"
    assert out.exists()

    replayed = invoke("certify", "--replay", str(out))
    assert replayed.exit_code == 0
    assert "replays" in replayed.stdout


def test_replay_of_a_tampered_certificate_fails(invoke, tmp_path):
    out = tmp_path / "cert.json"
    invoke(
        "certify", "--e", "3", "--p", "0", "--class", "[1,1,1]", "--weight", "2",
        "--output", str(out),
    )
    data = json.loads(out.read_text())
    data["verdict"] = "INCONCLUSIVE"
    out.write_text(json.dumps(data))

    result = invoke("certify", "--replay", str(out), "--json")
    assert result.exit_code == 1
    assert json.loads(result.stdout)["ok"] is False


def test_unreadable_certificate_is_a_domain_error(invoke, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    result = invoke("certify", "--replay", str(bad))
    assert result.exit_code == 1
    assert "not valid JSON" in result.stderr


def test_inconclusive_certificate_still_exits_zero(invoke):
    data = json_of(
        invoke("certify", "--e", "3", "--p", "2", "--class", "[1,2,3]", "--weight", "2", "--json")
    )
    assert data["verdict"] == "INCONCLUSIVE"
    assert data["diagnostic"]


def test_quantum_characteristic_two_is_rejected(invoke):
    result = invoke("certify", "--e", "2", "--p", "0", "--class", "[1,1]", "--weight", "2")
    assert result.exit_code == 1
    assert "quantum characteristic 2 out of scope" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ["abacus", "4,1"],
        ["block-info", "--core", "1", "--weight", "2"],
        ["quotient", "4,1"],
        ["scopes-normalize", "--core", "1", "--weight", "2"],
        ["decomp", "--rows", "4;3,1"],
        ["jantzen", "--p", "0", "3,1"],
        ["certify", "--p", "0", "--core", "1", "--weight", "2"],
        ["sweep", "--p", "0", "--weight", "2"],
    ],
    ids=lambda args: args[0],
)
@pytest.mark.parametrize(
    "e, message",
    [
        ("2", "quantum characteristic 2 out of scope"),
        ("1", "quantum characteristic must be at least 3, got 1"),
        ("0", "quantum characteristic must be at least 3, got 0"),
    ],
)
def test_every_command_rejects_small_e(invoke, args, e, message):
    result = invoke(args[0], "--e", e, *args[1:])
    assert result.exit_code == 1
    assert message in result.stderr
    assert result.stdout == ""


def test_certify_requires_a_block(invoke):
    result = invoke("certify", "--e", "3", "--p", "0")
    assert result.exit_code == 2


def test_sweep_summary(invoke):
    data = json_of(invoke("sweep", "--e", "3", "--p", "0", "--weight", "2", "--json"))
    assert data["summary"]["classes"] == 5
    assert data["summary"]["verdicts"] == {"SCHURIAN_INFINITE": 5}
    assert len(data["certificates"]) == 5


def test_cache_round_trip(invoke):
    assert invoke("decomp", "--e", "3", "--rows", "7,1;6,2").exit_code == 0

    stats = json_of(invoke("cache", "stats", "--json"))
    assert stats["columns"] > 0

    verified = invoke("cache", "verify")
    assert verified.exit_code == 0

    cleared = invoke("cache", "clear", "--yes")
    assert cleared.exit_code == 0
    assert json_of(invoke("cache", "stats", "--json"))["columns"] == 0


@pytest.mark.slow
def test_rouquier_block_certifies_in_characteristic_two(invoke):
    data = json_of(
        invoke("certify", "--e", "3", "--p", "2", "--class", "[1,4,7]", "--weight", "4", "--json")
    )
    assert data["verdict"] == "SCHURIAN_INFINITE"
    assert data["target"] == "DDAGGER"


def test_runner_reduction_flag_reaches_certification(runner, tmp_path, isolated_settings, mocker):
    spy = mocker.spy(main, "certify_block")
    result = runner.invoke(
        cli,
        [
            "--cache-dir", str(tmp_path / "columns"), "--enable-runner-reduction",
            "certify", "--e", "3", "--p", "0", "--class", "[1,1,1]", "--weight", "2",
        ],
    )
    assert result.exit_code == 0, result.output
    assert spy.call_args.kwargs["runner_reduction"] is True
