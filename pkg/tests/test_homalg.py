"""Rings, presented modules, complexes, and the homological operations."""

import pytest

from ttsupport.errors import InputError
from ttsupport.homalg import (
    ChainComplex,
    IntegersLocalized,
    LnaModule,
    LocalNilpotentAlgebra,
    ModularIntegers,
    PresentedModule,
    cone,
    derived_tensor_residue,
    hom_complex_h0,
    identity_blocks,
    koszul_stable,
    localize,
    localize_by_element,
    module_complex,
    ring_from_json,
    zero_complex,
)

Z = IntegersLocalized()
Z4 = ModularIntegers(4)
Z6 = ModularIntegers(6)
Z12 = ModularIntegers(12)
LNA = LocalNilpotentAlgebra(2, (("x", 2), ("y", 3)))


def _free_complex(ring, mats, min_deg=0):
    mods = [PresentedModule.free(ring, len(mats[0][0]))]
    for m in mats:
        mods.append(PresentedModule.free(ring, len(m)))
    return ChainComplex(ring, min_deg, mods, mats)


# -- rings -------------------------------------------------------------------


def test_ring_json_round_trip():
    for ring in (Z, Z6, LNA, IntegersLocalized(at_prime=3), IntegersLocalized(inverted={2})):
        assert ring_from_json(ring.to_json()) == ring


def test_unit_detection():
    assert IntegersLocalized(inverted={2}).is_unit(4)
    assert not IntegersLocalized(inverted={2}).is_unit(6)
    assert Z6.is_unit(5) and not Z6.is_unit(2)
    assert LNA.element_is_unit(1) and not LNA.element_is_unit("x")


def test_invalid_rings_are_rejected():
    with pytest.raises(InputError):
        ModularIntegers(1)
    with pytest.raises(InputError):
        LocalNilpotentAlgebra(4, (("x", 2),))
    with pytest.raises(InputError):
        IntegersLocalized(inverted={4})


# -- modules -----------------------------------------------------------------


def test_canonical_form_of_presented_modules():
    m = PresentedModule(Z, 2, [[2, 0], [0, 3]])
    c = m.canonical()
    assert c.rank == 0 and sorted(c.factors) == [6] or sorted(c.factors) == [2, 3]
    free = PresentedModule.free(Z, 3).canonical()
    assert free.rank == 3 and free.factors == ()


def test_modulus_folds_into_the_presentation():
    m = PresentedModule.free(Z6, 1)
    c = m.canonical()
    assert c.factors == (6,) and c.rank == 0


def test_unit_primes_are_stripped_from_invariant_factors():
    half = IntegersLocalized(inverted={2})
    m = PresentedModule.cyclic(half, 12)
    assert m.canonical().factors == (3,)


def test_lna_modules_validate_commuting_nilpotent_actions():
    free = LnaModule.free(LNA, 1)
    assert free.dim == LNA.dim
    bad = [[0] * LNA.dim for _ in range(LNA.dim)]
    bad[0][0] = 1  # does not commute with the generator actions
    with pytest.raises(InputError):
        LnaModule(LNA, LNA.dim, {"x": bad, "y": free.actions["y"]})


# -- complexes and cohomology -------------------------------------------------


def test_differential_square_zero_is_enforced():
    with pytest.raises(InputError):
        _free_complex(Z, [[[1]], [[1]]])


def test_cohomology_of_multiplication_by_two_on_the_integers():
    cx = _free_complex(Z, [[[2]]])
    assert cx.cohomology(0).is_zero
    h1 = cx.cohomology(1)
    assert h1.factors == (2,) and h1.rank == 0


def test_koszul_style_complex_over_the_integers():
    # Z -> Z^2 -> Z with maps (2,4) and (-4,2); gcd 2 survives in H^1, H^2
    cx = ChainComplex(
        Z,
        0,
        [PresentedModule.free(Z, 1), PresentedModule.free(Z, 2), PresentedModule.free(Z, 1)],
        [[[2], [4]], [[-4, 2]]],
    )
    assert cx.cohomology(0).is_zero
    assert cx.cohomology(1).factors == (2,)
    assert cx.cohomology(2).factors == (2,)
    # coprime coefficients give an exact complex away from the ends
    exact = ChainComplex(
        Z,
        0,
        [PresentedModule.free(Z, 1), PresentedModule.free(Z, 2), PresentedModule.free(Z, 1)],
        [[[2], [3]], [[-3, 2]]],
    )
    assert exact.cohomology(1).is_zero and exact.cohomology(2).is_zero


def test_cohomology_respects_direct_sums():
    a = _free_complex(Z, [[[2]]])
    b = module_complex(PresentedModule.cyclic(Z, 3), 1)
    both = a.direct_sum(b)
    h1 = both.cohomology(1)
    assert sorted(h1.factors) in ([6], [2, 3])


def test_cone_over_the_identity_is_acyclic():
    for cx in (
        _free_complex(Z, [[[2]]]),
        _free_complex(Z6, [[[2]]]),
        module_complex(LnaModule.free(LNA, 1), 0),
    ):
        assert cone(identity_blocks(cx), cx, cx).is_acyclic()


def test_shift_moves_cohomology():
    cx = module_complex(PresentedModule.cyclic(Z, 5), 0)
    assert cx.shift(2).cohomology(-2).factors == (5,)


def test_complex_json_round_trip():
    cx = _free_complex(Z6, [[[2]]], min_deg=-1)
    again = ChainComplex.from_json(cx.to_json())
    assert again.min_deg == cx.min_deg
    assert all(
        again.cohomology(i).factors == cx.cohomology(i).factors for i in cx.degrees()
    )


def test_lna_cohomology_is_dimension_counting():
    x = LNA.multiplication_matrix("x")
    cx = ChainComplex(LNA, 0, [LnaModule.free(LNA, 1), LnaModule.free(LNA, 1)], [x])
    h0, h1 = cx.cohomology(0), cx.cohomology(1)
    # multiplication by x on F2[x,y]/(x^2,y^3) has 3-dimensional image
    assert h0.dim == 3 and h1.dim == 3


# -- stable Koszul ------------------------------------------------------------


def test_stable_koszul_on_the_integers_gives_the_divisible_quotient():
    k = koszul_stable(2, module_complex(PresentedModule.free(Z, 1), 0))
    assert k.cohomology(0).is_zero
    h1 = k.cohomology(1)
    assert h1.divisible == ((2, 1),) and h1.rank == 0 and h1.factors == ()


def test_stable_koszul_computes_torsion_of_bounded_below_complexes():
    # Gamma_2 of Z/12 is Z/4
    g = koszul_stable(2, module_complex(PresentedModule.free(Z12, 1), 0))
    assert g.cohomology(0).factors == (4,)
    assert all(g.cohomology(i).is_zero for i in g.degrees() if i != 0)


def test_stable_koszul_with_a_unit_is_acyclic():
    assert koszul_stable(5, module_complex(PresentedModule.free(Z6, 1), 0)).is_acyclic()
    assert koszul_stable(1, module_complex(LnaModule.free(LNA, 1), 0)).is_acyclic()


def test_stable_koszul_on_nilpotents_keeps_everything():
    k = koszul_stable("x", module_complex(LnaModule.free(LNA, 1), 0))
    assert not k.is_acyclic()


def test_stable_koszul_is_symmetric_in_the_elements():
    cx = _free_complex(Z12, [[[6]]])
    a = koszul_stable(3, koszul_stable(2, cx))
    b = koszul_stable(2, koszul_stable(3, cx))
    for i in set(a.degrees()) | set(b.degrees()):
        assert a.cohomology(i).factors == b.cohomology(i).factors


def test_localize_by_element_keeps_the_coprime_part():
    ell = localize_by_element(module_complex(PresentedModule.free(Z6, 1), 0), 2)
    assert ell.cohomology(0).factors == (3,)
    assert localize_by_element(module_complex(PresentedModule.free(Z4, 1), 0), 2).is_acyclic()


def test_localize_at_a_prime():
    cx = module_complex(PresentedModule.cyclic(Z, 6), 0)
    at2 = localize(cx, 2)
    assert at2.cohomology(0).factors == (2,)
    at5 = localize(cx, 5)
    assert at5.is_acyclic()


# -- residue fields and derived Hom -------------------------------------------


def test_residue_dimensions_of_a_torsion_module():
    cx = module_complex(PresentedModule.cyclic(Z, 6), 0)
    assert derived_tensor_residue(cx, 2).dims == ((-1, 1), (0, 1))
    assert not derived_tensor_residue(cx, 5).is_nonzero
    assert not derived_tensor_residue(cx, 0).is_nonzero


def test_residue_at_the_generic_point_counts_free_ranks():
    cx = module_complex(PresentedModule.free(Z, 2), 0)
    assert derived_tensor_residue(cx, 0).dims == ((0, 2),)


def test_derived_hom_of_the_periodic_resolution():
    s = module_complex(PresentedModule.cyclic(Z4, 2), 0)
    res = hom_complex_h0(s, s, window=(-1, 2))
    assert res.certified
    groups = dict(res.groups)
    assert groups[-1].is_zero
    for k in (0, 1, 2):
        assert groups[k].factors == (2,)


def test_derived_hom_vanishes_for_coprime_torsion():
    s = module_complex(PresentedModule.cyclic(Z6, 2), 0)
    t = module_complex(PresentedModule.cyclic(Z6, 3), 0)
    res = hom_complex_h0(s, t, window=(-2, 2))
    assert res.certified and res.all_vanish


def test_derived_hom_sees_shifts():
    s = module_complex(PresentedModule.cyclic(Z4, 2), 0)
    t = s.shift(-1)  # target moved up by one degree
    res = hom_complex_h0(s, t, window=(0, 1))
    groups = dict(res.groups)
    assert not groups[1].is_zero


def test_zero_complex_is_acyclic():
    assert zero_complex(Z).is_acyclic()
    assert zero_complex(LNA).is_acyclic()
