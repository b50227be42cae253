"""Small, big, and residue-field support, and the compatibility suite."""

import pytest

from ttsupport.errors import InputError
from ttsupport.homalg import (
    ChainComplex,
    IntegersLocalized,
    LnaModule,
    LocalNilpotentAlgebra,
    ModularIntegers,
    PresentedModule,
    module_complex,
    zero_complex,
)
from ttsupport.support import (
    SupportDescriptor,
    base_change_check,
    big_support,
    candidate_primes,
    crt_element,
    descriptor_from_set,
    detect_vanishing,
    foxby_support,
    localize_support_check,
    main1_property_suite,
    orthogonality_check,
    small_support,
    spec,
    torsion_functor,
    weakly_associated,
)

Z = IntegersLocalized()
Z6 = ModularIntegers(6)
Z12 = ModularIntegers(12)
LNA = LocalNilpotentAlgebra(2, (("x", 2), ("y", 3)))


def _cyclic(ring, d, deg=0):
    return module_complex(PresentedModule.cyclic(ring, d), deg)


# -- descriptors ---------------------------------------------------------------


def test_descriptor_normalization_rules():
    with pytest.raises(InputError):
        SupportDescriptor(cofinite=True, explicit=frozenset({2}))
    with pytest.raises(InputError):
        SupportDescriptor(exceptions=frozenset({2}))
    d = SupportDescriptor(generic=True, cofinite=True, exceptions=frozenset({5}))
    assert d.contains(0) and d.contains(3) and not d.contains(5)


def test_spectrum_shapes_of_the_base_rings():
    assert spec(Z6).closed_points == ("(2)", "(3)")
    assert spec(LNA).closed_points == ("m",)
    local = spec(IntegersLocalized(at_prime=2))
    assert local.has_generic and local.closed_points == ("(2)",)
    assert spec(Z).space is None and spec(Z).has_generic


# -- small support --------------------------------------------------------------


def test_small_support_of_torsion_modules():
    assert small_support(_cyclic(Z6, 0)).closed_set() == {2, 3}
    assert small_support(_cyclic(Z6, 2)).closed_set() == {2}
    assert small_support(_cyclic(Z, 6)).closed_set() == {2, 3}


def test_small_support_of_a_free_module_over_the_integers_is_everything():
    d = small_support(module_complex(PresentedModule.free(Z, 1), 0))
    assert d.generic and d.cofinite and not d.exceptions


def test_small_support_over_the_local_nilpotent_algebra():
    assert small_support(module_complex(LnaModule.free(LNA, 1), 0)).closed_set() == {"m"}
    assert small_support(zero_complex(LNA)).is_empty


def test_empty_support_detects_acyclicity():
    assert detect_vanishing(zero_complex(Z))
    assert detect_vanishing(_cyclic(Z, 1))
    assert not detect_vanishing(_cyclic(Z, 4))


def test_longer_test_sequences_agree_with_single_generators():
    for cx in (_cyclic(Z, 12), _cyclic(Z12, 4), module_complex(LnaModule.free(LNA, 1), 0)):
        assert small_support(cx, sequence_length=1) == small_support(cx, sequence_length=2)


def test_primes_outside_the_candidate_set_stay_outside_the_support():
    cx = _cyclic(Z, 12)
    cands = set(candidate_primes(cx))
    desc = small_support(cx)
    # three primes beyond anything dividing the presentation
    for q in (101, 103, 107):
        assert q not in cands
        assert not desc.contains(q)


# -- big and residue-field support ----------------------------------------------


def test_small_inside_big_with_equality_on_free_complexes():
    cx = _cyclic(Z, 12)
    assert small_support(cx).closed_set() <= big_support(cx).closed_set()
    perfect = ChainComplex(
        Z, 0, [PresentedModule.free(Z, 1), PresentedModule.free(Z, 1)], [[[4]]]
    )
    assert small_support(perfect) == big_support(perfect)


def test_residue_field_support_agrees_over_the_integers():
    for cx in (_cyclic(Z, 6), module_complex(PresentedModule.free(Z, 1), 0), _cyclic(Z, 1)):
        assert foxby_support(cx) == small_support(cx)


def test_residue_field_support_over_quotients_and_local_algebras():
    assert foxby_support(_cyclic(Z6, 2)).closed_set() == {2}
    assert foxby_support(module_complex(LnaModule.free(LNA, 1), 0)).closed_set() == {"m"}
    assert foxby_support(zero_complex(LNA)).is_empty


# -- weakly associated primes ----------------------------------------------------


def test_weakly_associated_primes_of_modules():
    assert weakly_associated(PresentedModule.cyclic(Z, 6)) == {2, 3}
    assert weakly_associated(PresentedModule.free(Z, 1)) == {0}
    assert weakly_associated(LnaModule.free(LNA, 1)) == {"m"}


def test_minimal_weakly_associated_primes_sit_inside_the_support():
    samples = [_cyclic(Z, 12), _cyclic(Z6, 2), _cyclic(Z, 0)]
    for cx in samples:
        desc = small_support(cx)
        union = set()
        for i in cx.degrees():
            union |= weakly_associated(cx.module(i))
        minimal = {0} if 0 in union else union
        assert all(desc.contains(p) for p in minimal)


def test_support_of_a_direct_sum_is_the_union():
    a, b = _cyclic(Z6, 2), _cyclic(Z6, 3, deg=1)
    total = small_support(a.direct_sum(b)).closed_set()
    assert total == small_support(a).closed_set() | small_support(b).closed_set()


# -- compatibility checks ---------------------------------------------------------


def test_inverting_primes_cuts_the_support():
    ok, before, after = localize_support_check(_cyclic(Z, 12), {2})
    assert ok
    assert before.contains(2) and not after.contains(2)
    assert after.contains(3)


def test_base_change_preserves_closed_supports():
    ok, upstairs, downstairs = base_change_check(_cyclic(Z6, 2), "Z")
    assert ok and upstairs == downstairs == {2}
    ok, _u, _d = base_change_check(_cyclic(Z6, 2), 12)
    assert ok


def test_crt_element_cuts_out_the_requested_primes():
    x = crt_element(Z6, {2})
    assert x % 2 == 0 and x % 3 == 1
    gamma = torsion_functor(module_complex(PresentedModule.free(Z6, 1), 0), {2})
    assert small_support(gamma).closed_set() == {2}


def test_property_suite_passes_on_a_mixed_instance():
    cx = _cyclic(Z12, 4).direct_sum(_cyclic(Z12, 3, deg=1))
    other = _cyclic(Z12, 2)
    results = main1_property_suite(cx, {2}, other=other, scalar=3)
    assert all(results.values()), results


def test_orthogonal_complexes_have_no_maps():
    applicable, ok, res = orthogonality_check(_cyclic(Z6, 2), _cyclic(Z6, 3), {2})
    assert applicable and ok and res.certified


def test_property_suite_rejects_integer_complexes():
    with pytest.raises(InputError):
        main1_property_suite(_cyclic(Z, 2), {2})


def test_descriptor_from_set_round_trip():
    d = descriptor_from_set({2, 7})
    assert d.closed_set() == {2, 7} and not d.generic
