"""Abstract support data: gamma, complements, and the eta factorization."""

import json

import pytest

from ttsupport.axioms import (
    SupportDatum,
    canonical_datum,
    check_complements,
    construct_eta,
    eta_is_unique,
    is_supportive,
    localizing_frame,
    thomason_frame,
)
from ttsupport.errors import InputError
from ttsupport.frames import FiniteFrame, frame_of, set_label, universal_factorization, sigma
from ttsupport.poset import FinitePoset, enumerate_posets
from ttsupport.spectral import SpectralSpace


def _space(elements, pairs):
    return SpectralSpace(FinitePoset.from_pairs(elements, pairs))


CHAIN2 = _space(["g", "c"], [("g", "c")])
A2 = _space(["a", "b"], [])


def test_thomason_frame_is_the_frame_of_up_sets():
    frame, labels = thomason_frame(CHAIN2)
    assert len(frame) == 3
    dual_opens, _ = frame_of(CHAIN2.hochster_dual())
    assert frame.is_isomorphic_to(dual_opens)
    frame, _ = thomason_frame(A2)
    assert len(frame) == 4


def test_localizing_frame_of_a_finite_space_is_the_powerset():
    frame, _ = localizing_frame(CHAIN2)
    assert len(frame) == 4
    assert frame.is_boolean()


def test_canonical_datum_is_complemented_and_supportive():
    for space in (CHAIN2, A2):
        datum = canonical_datum(space)
        ok, bad = check_complements(datum)
        assert ok and not bad
        supportive, _reason = is_supportive(datum)
        assert supportive


def test_eta_exists_is_unique_and_extends_gamma():
    datum = canonical_datum(CHAIN2)
    result = construct_eta(datum)
    assert result.hom is not None
    assert eta_is_unique(datum, result)
    # eta restricted along the Thomason inclusion reproduces gamma
    for t in datum.tframe.elements:
        skula_label = set_label(datum.tlabels[t])
        assert result.hom(skula_label) == datum.gamma(t)


def test_eta_agrees_with_factorization_through_the_assembly():
    # both constructions express the same universal map on closed pieces
    space = CHAIN2
    datum = canonical_datum(space)
    result = construct_eta(datum)
    psi, is_iso, asm = sigma(space)
    assert is_iso
    # with the powerset as target and gamma the inclusion, eta is the
    # identity on labels, so eta . psi . alpha fixes every open
    for x in asm.base.elements:
        assert result.hom(psi(asm.alpha(x))) == x


def test_eta_exists_for_every_complemented_datum_on_small_spaces():
    for n in range(1, 4):
        for order in enumerate_posets(n):
            datum = canonical_datum(SpectralSpace(order))
            result = construct_eta(datum)
            assert result.hom is not None
            assert eta_is_unique(datum, result)


def test_non_complemented_data_are_rejected():
    # identity gamma into the non-Boolean frame of Thomason sets: the middle
    # element has no complement
    space = CHAIN2
    tframe, _labels = thomason_frame(space)
    gamma = {t: t for t in tframe.elements}
    with pytest.raises(InputError):
        datum = SupportDatum(space, tframe, gamma)
        ok, bad = check_complements(datum)
        if not ok:
            raise InputError("missing complements: %r" % bad)


def test_datum_json_round_trip():
    datum = canonical_datum(CHAIN2)
    blob = json.dumps(datum.to_json(), sort_keys=True)
    again = SupportDatum.from_json(json.loads(blob))
    assert json.dumps(again.to_json(), sort_keys=True) == blob


def test_datum_json_requires_all_fields():
    with pytest.raises(InputError):
        SupportDatum.from_json({"space": CHAIN2.order.to_json()})
