"""CLI surface: subcommands, flags, exit codes, format agreement."""

import csv
import io
import json

import pytest

from dslie.cli import main


def run(capsys, argv, cache_dir=None):
    if cache_dir and "--cache-dir" not in argv:
        argv = argv + ["--cache-dir", cache_dir]
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_summary(capsys, cache_dir):
    code, out, _ = run(capsys, ["build", "brj(2;5)", "-p", "5"], cache_dir)
    assert code == 0
    assert "sdim 10|12" in out and "10 positive roots" in out


def test_build_unknown_key(capsys):
    code, _out, err = run(capsys, ["build", "nosuch", "-p", "3"])
    assert code == 1
    assert "available" in err


def test_ds_single(capsys, cache_dir):
    code, out, _ = run(capsys, ["ds", "psl(2|2)", "-p", "3", "--x", "x1"], cache_dir)
    assert code == 0
    assert "6" in out and "K^{0|2}" in out


def test_ds_rejects_even(capsys, cache_dir):
    code, _out, err = run(capsys, ["ds", "sl(2)", "-p", "0", "--x", "h"], cache_dir)
    assert code == 2
    assert "not homological" in err


def test_ds_rejection_states_square(capsys, cache_dir):
    code, _out, err = run(capsys, ["ds", "brj(2;5)", "-p", "5", "--x", "x2"],
                          cache_dir)
    assert code == 2
    assert "square" in err


def test_defect_brj(capsys, cache_dir):
    code, out, _ = run(capsys, ["defect", "brj(2;5)", "-p", "5",
                                "--samples", "10"], cache_dir)
    assert code == 0
    assert "g_max 1, df 1, ndf 1" in out


def test_table_square(capsys, cache_dir):
    code, out, _ = run(capsys, ["table", "psl-square", "-p", "3", "-n", "2"],
                       cache_dir)
    assert code == 0
    assert "psl(2|2)" in out and "K^{0|2}" in out


def test_formats_agree(capsys, cache_dir):
    _c, text, _ = run(capsys, ["ds", "brj(2;5)", "-p", "5", "--x", "x1"], cache_dir)
    _c, csvout, _ = run(capsys, ["ds", "brj(2;5)", "-p", "5", "--x", "x1",
                                 "--format", "csv"], cache_dir)
    _c, recs, _ = run(capsys, ["ds", "brj(2;5)", "-p", "5", "--x", "x1",
                               "--format", "records"], cache_dir)
    rec = json.loads(recs.strip().splitlines()[0])
    rows = list(csv.DictReader(io.StringIO(csvout)))
    assert rec["rank_ad"] == 10
    assert rows[0]["rank_ad"] == "10"
    assert "10" in text
    assert rec["label"] == rows[0]["label"] == "K^{0|2}"


def test_determinism(capsys, cache_dir):
    argv = ["defect", "bgl(4;alpha)", "-p", "2", "--samples", "5",
            "--seed", "7", "--format", "records"]
    _c, out1, _ = run(capsys, argv, cache_dir)
    _c, out2, _ = run(capsys, argv, cache_dir)
    assert out1 == out2


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, ["catalog", "-p", "5"])
    assert code == 0
    assert "brj(2;5)" in out and "el(5;5)" in out


def test_audit_subset_exit_codes(capsys, cache_dir):
    code, out, _ = run(capsys, ["audit", "--keys", "brj25", "brj23"], cache_dir)
    assert code == 0
    assert "match" in out
    # a whitelisted-discrepancy table still exits 0
    code2, out2, _ = run(capsys, ["audit", "--keys", "el55"], cache_dir)
    assert code2 == 0
    assert "documented" in out2


def test_audit_usage(capsys):
    code, _out, err = run(capsys, ["audit"])
    assert code == 1
