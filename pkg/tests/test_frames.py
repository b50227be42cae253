"""Finite frames, nuclei, the assembly, and the Skula comparison map."""

import pytest

from ttsupport.errors import InputError
from ttsupport.frames import (
    FiniteFrame,
    FrameHom,
    assembly,
    closed_nucleus,
    frame_of,
    nucleus_join,
    open_nucleus,
    sigma,
    spc,
    universal_factorization,
    validate_nucleus,
)
from ttsupport.poset import FinitePoset, enumerate_posets
from ttsupport.spectral import SpectralSpace


def _space(elements, pairs):
    return SpectralSpace(FinitePoset.from_pairs(elements, pairs))


CHAIN2 = _space(["g", "c"], [("g", "c")])
A2 = _space(["a", "b"], [])
VPOSET = _space(["g", "m1", "m2"], [("g", "m1"), ("g", "m2")])

CHAIN3 = FiniteFrame(
    FinitePoset.from_pairs(["0", "a", "1"], [("0", "a"), ("a", "1")])
)
BOOL4 = FiniteFrame(
    FinitePoset.from_pairs(["0", "x", "y", "1"], [("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")])
)


def test_open_set_frames_of_small_spaces():
    frame, _ = frame_of(CHAIN2)
    assert frame.is_isomorphic_to(CHAIN3)
    frame, _ = frame_of(A2)
    assert frame.is_isomorphic_to(BOOL4)
    frame, _ = frame_of(VPOSET)
    assert len(frame) == 5


def test_non_lattices_and_non_distributive_orders_are_rejected():
    with pytest.raises(InputError):
        FiniteFrame(FinitePoset.from_pairs(["a", "b"], []))
    diamond = FinitePoset.from_pairs(
        ["0", "x", "y", "z", "1"],
        [("0", "x"), ("0", "y"), ("0", "z"), ("x", "1"), ("y", "1"), ("z", "1")],
    )
    with pytest.raises(InputError):
        FiniteFrame(diamond)


def test_primes_are_the_meet_irreducibles():
    assert CHAIN3.primes() == ["0", "a"]
    assert BOOL4.primes() == ["x", "y"]
    two = FiniteFrame(FinitePoset.from_pairs(["0", "1"], [("0", "1")]))
    assert two.primes() == ["0"]


def test_heyting_implication_and_complements():
    assert CHAIN3.heyting("a", "0") == "0"
    assert CHAIN3.heyting("1", "a") == "a"
    assert BOOL4.complement("x") == "y"
    assert CHAIN3.complement("a") is None
    assert BOOL4.is_boolean() and not CHAIN3.is_boolean()


def test_point_space_round_trip():
    for space in (CHAIN2, A2, VPOSET):
        frame, _ = frame_of(space)
        pts, lam, is_spatial = spc(frame)
        assert is_spatial
        assert pts.order.is_isomorphic_to(space.order)
        assert lam.is_isomorphism()


def test_nucleus_validation_names_the_failure():
    table = {"0": "0", "a": "a", "1": "1"}
    ok, report = validate_nucleus(CHAIN3, table)
    assert ok
    ok, _report = validate_nucleus(CHAIN3, {"0": "0", "a": "0", "1": "1"})
    assert not ok
    ok, _report = validate_nucleus(CHAIN3, {"0": "1", "a": "1", "1": "1"})
    assert ok


def test_assembly_of_a_three_chain_has_four_nuclei():
    asm = assembly(CHAIN3)
    tables = {tuple(nu(x) for x in ("0", "a", "1")) for nu in asm.nuclei.values()}
    assert tables == {
        ("0", "a", "1"),  # identity
        ("1", "1", "1"),  # top
        ("a", "a", "1"),  # closed at a
        ("0", "1", "1"),  # open at a
    }


def test_assembly_closed_and_open_nuclei_are_complements():
    asm = assembly(CHAIN3)
    for x in CHAIN3.elements:
        label = asm.alpha(x)
        comp = asm.alpha_complement[x]
        assert asm.frame.complement(label) == comp
        cx = closed_nucleus(CHAIN3, x)
        ux = open_nucleus(CHAIN3, x)
        assert all(asm.nuclei[label](y) == cx(y) for y in CHAIN3.elements)
        assert all(asm.nuclei[comp](y) == ux(y) for y in CHAIN3.elements)


def test_assembly_counts_powers_of_two_for_open_set_frames():
    for n in range(1, 4):
        for order in enumerate_posets(n):
            frame, _ = frame_of(SpectralSpace(order))
            assert len(assembly(frame).nuclei) == 2 ** n


def test_nucleus_join_agrees_with_the_assembly_lattice_join():
    asm = assembly(CHAIN3)
    labels = sorted(asm.nuclei)
    for la in labels:
        for lb in labels:
            joined = nucleus_join(CHAIN3, asm.nuclei[la], asm.nuclei[lb])
            lattice = asm.frame.join(la, lb)
            assert all(joined(x) == asm.nuclei[lattice](x) for x in CHAIN3.elements)


def test_universal_factorization_through_the_assembly():
    asm = assembly(CHAIN3)
    # the structure map factors through itself via the identity
    tilde = universal_factorization(asm, asm.alpha, check_unique=True)
    for x in CHAIN3.elements:
        assert tilde(asm.alpha(x)) == asm.alpha(x)


def test_universal_factorization_requires_complemented_images():
    asm = assembly(CHAIN3)
    ident = FrameHom(CHAIN3, CHAIN3, {x: x for x in CHAIN3.elements})
    with pytest.raises(InputError):
        universal_factorization(asm, ident)


def test_sigma_is_an_isomorphism_on_small_spaces():
    for n in range(1, 4):
        for order in enumerate_posets(n):
            _psi, is_iso, _asm = sigma(SpectralSpace(order), check_unique=(n <= 2))
            assert is_iso


def test_sigma_composed_with_alpha_is_the_skula_comparison():
    space = CHAIN2
    psi, is_iso, asm = sigma(space)
    assert is_iso
    # psi maps nuclei onto Skula opens; composed with alpha it must send each
    # open (down-set label) to itself seen inside the discrete Skula frame
    for x in asm.base.elements:
        assert psi(asm.alpha(x)) == x


def test_essential_primes_examples():
    assert CHAIN3.min_primes("0") == ["0"]
    assert CHAIN3.essential_primes("0") == ["0"]
    assert BOOL4.min_primes("0") == ["x", "y"]
    assert BOOL4.essential_primes("0") == ["x", "y"]
    assert CHAIN3.essential_primes("1") == []
