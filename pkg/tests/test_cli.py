"""Command-line interface: contracts, formats, exit codes, determinism."""

import json
import subprocess
import sys

CHAIN2 = json.dumps({"elements": ["g", "c"], "leq": [["g", "c"]]})
Z6_COMPLEX = json.dumps(
    {
        "ring": {"type": "Z/n", "n": 6},
        "degrees": [0, 0],
        "modules": [[[]]],
        "differentials": [],
    }
)
THREE_CHAIN = json.dumps(
    {"elements": ["0", "a", "1"], "leq": [["0", "a"], ["a", "1"], ["0", "1"]]}
)


def _run(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "ttsupport.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout


def test_cb_rank_of_a_two_chain():
    code, out = _run("spectral", "cbrank", CHAIN2)
    assert code == 0
    assert json.loads(out) == {"rank": 2}


def test_thomason_sets_are_sorted_lists():
    code, out = _run("spectral", "thomason", CHAIN2)
    assert code == 0
    assert json.loads(out) == [[], ["c"], ["c", "g"]]


def test_small_support_of_the_ring_itself():
    code, out = _run("support", "small", Z6_COMPLEX)
    assert code == 0
    report = json.loads(out)
    assert report["primes"] == ["(2)", "(3)"]
    assert report["generic"] is False and report["cofinite"] is False


def test_assembly_lists_four_nuclei_for_the_two_chain():
    code, out = _run("frames", "assembly", CHAIN2)
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 4 and len(report["nuclei"]) == 4
    for nucleus in report["nuclei"]:
        assert {"label", "table"} <= set(nucleus)


def test_frames_primes_reads_a_frame_order_directly():
    code, out = _run("frames", "primes", THREE_CHAIN)
    assert code == 0
    assert json.loads(out) == {"primes": ["0", "a"]}


def test_axioms_round_trip_through_canonical_datum():
    code, datum = _run("axioms", "canonical", CHAIN2)
    assert code == 0
    code, out = _run("axioms", "eta", datum.strip())
    assert code == 0
    report = json.loads(out)
    assert report["exists"] and report["unique"]


def test_malformed_input_gives_structured_error_and_exit_one():
    code, out = _run("support", "small", '{"nope": 1}')
    assert code == 1
    assert "error" in json.loads(out)
    code, out = _run("spectral", "cbrank", "{broken json")
    assert code == 1
    assert "error" in json.loads(out)


def test_oversized_poset_gives_exit_two_naming_the_bound():
    big = json.dumps({"elements": list("abcdefg"), "leq": []})
    code, out = _run("spectral", "cbrank", big)
    assert code == 2
    report = json.loads(out)
    assert report["bound"] == "max-poset"


def test_tsv_format_renders_key_value_lines():
    code, out = _run("--format", "tsv", "support", "small", Z6_COMPLEX)
    assert code == 0
    lines = dict(line.split("\t", 1) for line in out.strip().splitlines())
    assert lines["primes"] == '"(2)","(3)"'


def test_suite_with_a_fixed_seed_is_byte_identical():
    first = _run("--seed", "42", "--samples", "2", "suite")
    second = _run("--seed", "42", "--samples", "2", "suite")
    assert first == second
    assert first[0] == 0
    report = json.loads(first[1])
    assert report["all_passed"] and len(report["rows"]) == 12


def test_suite_tsv_table_lists_every_criterion():
    code, out = _run("--format", "tsv", "--seed", "7", "--samples", "2", "suite")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "id\tname\tpassed\tdetail"
    assert len(lines) == 13
    assert all(line.split("\t")[2] == "pass" for line in lines[1:])
