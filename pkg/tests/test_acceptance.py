"""Acceptance battery: every criterion at its stated scale and tolerance."""

import json
import subprocess
import sys
import time

import pytest

from ttsupport import battery

SEED = battery.DEFAULT_SEED
SAMPLES = battery.DEFAULT_SAMPLES


@pytest.fixture(scope="module")
def pool():
    return battery._all_instances(SEED, SAMPLES)


def test_01_every_small_space_has_a_power_of_two_nucleus_count():
    start = time.time()
    row = battery.criterion_nucleus_count(max_poset=4)
    assert row["passed"], row["detail"]
    assert "24 spaces" in row["detail"]
    assert time.time() - start < 60


def test_02_sigma_is_an_isomorphism_on_all_small_spaces():
    start = time.time()
    row = battery.criterion_sigma_iso(max_poset=4)
    assert row["passed"], row["detail"]
    assert time.time() - start < 60


def test_03_the_five_weakly_scattered_conditions_agree():
    row = battery.criterion_weakly_scattered_equivalences(max_poset=4)
    assert row["passed"], row["detail"]


def test_04_the_four_scattered_conditions_agree():
    row = battery.criterion_scattered_equivalences(max_poset=4)
    assert row["passed"], row["detail"]


def test_05_z_sets_are_the_largest_thomason_sets_missing_their_point():
    row = battery.criterion_zset_maximality(zset_max=6)
    assert row["passed"], row["detail"]


def test_06_support_vanishes_exactly_on_acyclic_complexes(pool):
    start = time.time()
    row = battery.criterion_vanishing(pool=pool)
    assert row["passed"], row["detail"]
    assert "1400 instances" in row["detail"]
    assert time.time() - start < 300


def test_07_small_and_residue_field_support_agree_over_the_integers(pool):
    row = battery.criterion_noetherian_agreement(pool=pool)
    assert row["passed"], row["detail"]
    assert "200 instances" in row["detail"]


def test_08_bottom_weakly_associated_primes_lie_in_the_support(pool):
    row = battery.criterion_weak_associated_inclusion(pool=pool)
    assert row["passed"], row["detail"]
    assert "1400 instances" in row["detail"]


def test_09_property_suite_and_orthogonality_over_z6_and_z12():
    row = battery.criterion_property_suite(seed=SEED, samples=SAMPLES)
    assert row["passed"], row["detail"]
    assert "400 suites" in row["detail"]


def test_10_eta_exists_and_is_unique_for_all_generated_data():
    row = battery.criterion_eta_factorization(seed=SEED)
    assert row["passed"], row["detail"]


def test_11_normal_form_self_check_on_a_thousand_matrices():
    start = time.time()
    row = battery.criterion_snf_selfcheck(seed=SEED, count=1000)
    assert row["passed"], row["detail"]
    assert "1000 matrices" in row["detail"]
    assert time.time() - start < 30


def test_12_suite_output_is_byte_identical_for_a_fixed_seed():
    def run():
        return subprocess.run(
            [sys.executable, "-m", "ttsupport.cli", "--seed", "42", "suite"],
            capture_output=True,
        )

    first, second = run(), run()
    assert first.stdout == second.stdout and first.stdout
    assert first.returncode == second.returncode == 0
    report = json.loads(first.stdout)
    assert report["all_passed"]
