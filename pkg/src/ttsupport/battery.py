"""Seeded random instances and the acceptance battery.

The battery rows returned by run_battery drive both the command-line
``suite`` subcommand and the acceptance tests; every check is deterministic
given the seed.
"""

import json
import random

from .errors import InputError
from .smith import identity, mat_mul, smith_normal_form, zeros
from .poset import ENUMERATION_MAX, enumerate_posets
from .spectral import SpectralSpace
from .frames import assembly, frame_of, sigma
from .homalg import (
    ChainComplex,
    IntegersLocalized,
    LnaModule,
    LocalNilpotentAlgebra,
    ModularIntegers,
    PresentedModule,
    cone,
    identity_blocks,
    module_complex,
)
from .support import (
    detect_vanishing,
    foxby_support,
    main1_property_suite,
    orthogonality_check,
    small_support,
    spec,
    weakly_associated,
)
from .axioms import SupportDatum, canonical_datum, construct_eta, eta_is_unique

DEFAULT_SEED = 42
DEFAULT_SAMPLES = 200
POSET_BOUND = 4
ZSET_POSET_BOUND = 6
ENTRY_BOUND = 10
SNF_ENTRY_BOUND = 50
MODULI = (4, 6, 8, 9, 12)
ORTHOGONALITY_PAIRS = 6


def ring_classes():
    rings = [IntegersLocalized()]
    rings.extend(ModularIntegers(n) for n in MODULI)
    rings.append(LocalNilpotentAlgebra(2, (("x", 2), ("y", 3))))
    return rings


# ---------------------------------------------------------------------------
# random instances


def _nonzero(rng, bound=ENTRY_BOUND):
    v = 0
    while v == 0:
        v = rng.randint(-bound, bound)
    return v


def _random_matrix(rng, rows, cols):
    return [[rng.randint(-ENTRY_BOUND, ENTRY_BOUND) for _ in range(cols)] for _ in range(rows)]


def _pid_piece(ring, rng):
    """One building block with d^2 = 0 by construction; returns (length, maker)."""
    kind = rng.randrange(4)
    if kind == 0:
        # a cyclic module concentrated in one degree
        d = rng.randint(0, ENTRY_BOUND)
        return 1, lambda deg: module_complex(PresentedModule.cyclic(ring, d), deg)
    if kind == 1:
        # two free modules joined by a random matrix
        r1, r2 = rng.randint(1, 2), rng.randint(1, 2)
        mat = _random_matrix(rng, r2, r1)
        return 2, lambda deg: ChainComplex(
            ring,
            deg,
            [PresentedModule.free(ring, r1), PresentedModule.free(ring, r2)],
            [mat],
        )
    if kind == 2:
        # R --(a,b)--> R^2 --(-b,a)--> R, exact composition for any a, b
        a, b = _nonzero(rng), _nonzero(rng)
        return 3, lambda deg: ChainComplex(
            ring,
            deg,
            [PresentedModule.free(ring, 1), PresentedModule.free(ring, 2), PresentedModule.free(ring, 1)],
            [[[a], [b]], [[-b, a]]],
        )
    # acyclic: the cone over the identity of a two-term piece
    _len2, maker = _pid_piece_two_term(ring, rng)

    def make(deg):
        base = maker(deg)
        return cone(identity_blocks(base), base, base)

    return 3, make


def _pid_piece_two_term(ring, rng):
    r1, r2 = rng.randint(1, 2), rng.randint(1, 2)
    mat = _random_matrix(rng, r2, r1)
    return 2, lambda deg: ChainComplex(
        ring,
        deg,
        [PresentedModule.free(ring, r1), PresentedModule.free(ring, r2)],
        [mat],
    )


def _lna_element_matrix(ring, rng, allow_unit=False):
    """Multiplication matrix of a random ring element; a polynomial in the
    generator matrices, so it commutes with every module action."""
    mats = [ring.multiplication_matrix(n) for n, _e in ring.generators]
    dim = ring.dim
    out = zeros(dim, dim)
    if allow_unit and rng.random() < 0.25:
        c = identity(dim)
        out = [[out[i][j] + c[i][j] for j in range(dim)] for i in range(dim)]
    for m in mats:
        if rng.random() < 0.7:
            c = rng.randint(1, ring.p - 1) if ring.p > 2 else 1
            out = [[out[i][j] + c * m[i][j] for j in range(dim)] for i in range(dim)]
    if len(mats) >= 2 and rng.random() < 0.4:
        prod = mat_mul(mats[0], mats[1])
        out = [[out[i][j] + prod[i][j] for j in range(dim)] for i in range(dim)]
    return out


def _lna_piece(ring, rng):
    kind = rng.randrange(4)
    dim = ring.dim
    if kind == 0:
        return 1, lambda deg: module_complex(LnaModule.free(ring, 1), deg)
    if kind == 1:
        a = _lna_element_matrix(ring, rng, allow_unit=True)
        return 2, lambda deg: ChainComplex(
            ring, deg, [LnaModule.free(ring, 1), LnaModule.free(ring, 1)], [a]
        )
    if kind == 2:
        a = _lna_element_matrix(ring, rng)
        b = _lna_element_matrix(ring, rng)
        d0 = [row[:] for row in a] + [row[:] for row in b]
        d1 = [[-b[r][c] for c in range(dim)] + [a[r][c] for c in range(dim)] for r in range(dim)]
        return 3, lambda deg: ChainComplex(
            ring,
            deg,
            [LnaModule.free(ring, 1), LnaModule.free(ring, 2), LnaModule.free(ring, 1)],
            [d0, d1],
        )
    a = _lna_element_matrix(ring, rng, allow_unit=True)

    def make(deg):
        base = ChainComplex(
            ring, deg, [LnaModule.free(ring, 1), LnaModule.free(ring, 1)], [a]
        )
        return cone(identity_blocks(base), base, base)

    return 3, make


def random_complex(ring, rng):
    """A bounded complex spanning at most four degrees, assembled from
    blocks that each satisfy d^2 = 0 individually."""
    piece_fn = _lna_piece if isinstance(ring, LocalNilpotentAlgebra) else _pid_piece
    out = None
    for _ in range(rng.randint(1, 2)):
        length, maker = piece_fn(ring, rng)
        deg = rng.randint(-2, 2 - length)
        piece = maker(deg)
        out = piece if out is None else out.direct_sum(piece)
    return out


def instances(ring, count, seed):
    rng = random.Random("%s|%s" % (seed, ring.label()))
    return [random_complex(ring, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# the criteria


def _row(ident, name, passed, detail):
    return {"id": ident, "name": name, "passed": bool(passed), "detail": detail}


def _spaces(max_points):
    for n in range(1, max_points + 1):
        for order in enumerate_posets(n):
            yield SpectralSpace(order)


def criterion_nucleus_count(max_poset=POSET_BOUND, **_kw):
    checked, bad = 0, []
    for space in _spaces(max_poset):
        frame, _labels = frame_of(space)
        asm = assembly(frame)
        checked += 1
        if len(asm.nuclei) != 2 ** len(space.points):
            bad.append(repr(space.order))
    return _row(
        1,
        "nucleus count 2^n",
        not bad,
        "%d spaces checked" % checked if not bad else "failed on %s" % bad[:3],
    )


def criterion_sigma_iso(max_poset=POSET_BOUND, **_kw):
    checked, bad = 0, []
    for space in _spaces(max_poset):
        _psi, is_iso, _asm = sigma(space)
        checked += 1
        if not is_iso:
            bad.append(repr(space.order))
    return _row(
        2,
        "sigma isomorphism",
        not bad,
        "%d spaces checked" % checked if not bad else "failed on %s" % bad[:3],
    )


def _weakly_scattered_conditions(space):
    """Five independently computed equivalent conditions."""
    _psi, cond_a, _asm = sigma(space)
    cond_b = space.is_weakly_scattered()
    cond_c = all(
        space.closure(space.weakly_isolated_points(c)) == c
        for c in space.closeds()
    )
    frame, _labels = frame_of(space)
    top = frame.join_many(frame.elements)
    cond_d = all(frame.essential_primes(x) for x in frame.elements if x != top)
    cond_e = all(
        frame.meet_many(frame.essential_primes(x)) == x
        for x in frame.elements
        if x != top
    )
    return cond_a, cond_b, cond_c, cond_d, cond_e


def criterion_weakly_scattered_equivalences(max_poset=POSET_BOUND, **_kw):
    checked, bad = 0, []
    for space in _spaces(max_poset):
        conds = _weakly_scattered_conditions(space)
        checked += 1
        if len(set(conds)) != 1:
            bad.append((repr(space.order), conds))
    return _row(
        3,
        "weakly-scattered equivalences",
        not bad,
        "%d spaces, 5 conditions each" % checked if not bad else "failed on %s" % bad[:2],
    )


def criterion_scattered_equivalences(max_poset=POSET_BOUND, **_kw):
    checked, bad = 0, []
    for space in _spaces(max_poset):
        frame, _labels = frame_of(space)
        conds = (
            space.is_scattered(),
            space.is_weakly_scattered() and space.is_t_half(),
            space.cb_rank() is not None,
            assembly(frame).frame.is_boolean(),
        )
        checked += 1
        if len(set(conds)) != 1:
            bad.append((repr(space.order), conds))
    return _row(
        4,
        "scattered equivalences",
        not bad,
        "%d spaces, 4 conditions each" % checked if not bad else "failed on %s" % bad[:2],
    )


def criterion_zset_maximality(zset_max=ZSET_POSET_BOUND, **_kw):
    checked, bad = 0, []
    for space in _spaces(zset_max):
        thomason = space.thomason_sets()
        for p in space.points:
            z = space.z_set(p)
            ok = (
                space.is_thomason(z)
                and p not in z
                and all(v <= z for v in thomason if p not in v)
            )
            checked += 1
            if not ok:
                bad.append((repr(space.order), p))
    return _row(
        5,
        "Z(p) maximality",
        not bad,
        "%d point checks" % checked if not bad else "failed on %s" % bad[:3],
    )


def _all_instances(seed, samples):
    return [(ring, instances(ring, samples, seed)) for ring in ring_classes()]


def criterion_vanishing(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, pool=None, **_kw):
    pool = pool if pool is not None else _all_instances(seed, samples)
    checked, bad = 0, []
    for ring, batch in pool:
        for k, cx in enumerate(batch):
            checked += 1
            if detect_vanishing(cx) != cx.is_acyclic():
                bad.append((ring.label(), k))
    return _row(
        6,
        "empty support iff acyclic",
        not bad,
        "%d instances" % checked if not bad else "failed on %s" % bad[:3],
    )


def criterion_noetherian_agreement(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, pool=None, **_kw):
    pool = pool if pool is not None else [(IntegersLocalized(), instances(IntegersLocalized(), samples, seed))]
    checked, bad = 0, []
    for ring, batch in pool:
        if not isinstance(ring, IntegersLocalized):
            continue
        for k, cx in enumerate(batch):
            checked += 1
            if small_support(cx) != foxby_support(cx):
                bad.append((ring.label(), k))
    return _row(
        7,
        "small equals residue-field support over Z",
        not bad,
        "%d instances" % checked if not bad else "failed on %s" % bad[:3],
    )


def _bottom_cohomology_primes(cx):
    for i in cx.degrees():
        h = cx.cohomology(i)
        zero = h.is_zero() if callable(getattr(h, "is_zero", None)) else h.is_zero
        if not zero:
            return weakly_associated(h)
    return frozenset()


def criterion_weak_associated_inclusion(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, pool=None, **_kw):
    pool = pool if pool is not None else _all_instances(seed, samples)
    checked, bad = 0, []
    for ring, batch in pool:
        for k, cx in enumerate(batch):
            ass = _bottom_cohomology_primes(cx)
            supp = small_support(cx)
            checked += 1
            if not all(supp.contains(p) for p in ass):
                bad.append((ring.label(), k))
    return _row(
        8,
        "bottom weakly-associated primes inside support",
        not bad,
        "%d instances" % checked if not bad else "failed on %s" % bad[:3],
    )


def criterion_property_suite(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, **_kw):
    checked, ortho_checked, bad = 0, 0, []
    for n in (6, 12):
        ring = ModularIntegers(n)
        batch = instances(ring, samples, seed)
        rng = random.Random("%s|suite|%d" % (seed, n))
        for k, cx in enumerate(batch):
            other = batch[(k + 1) % len(batch)]
            results = main1_property_suite(
                cx, {2}, other=other, scalar=_nonzero(rng)
            )
            checked += 1
            failing = [name for name, ok in results.items() if not ok]
            if failing:
                bad.append((ring.label(), k, failing))
        for k in range(min(ORTHOGONALITY_PAIRS, len(batch) - 1)):
            applicable, ok, _res = orthogonality_check(batch[k], batch[k + 1], {2})
            ortho_checked += 1
            if not (applicable and ok):
                bad.append((ring.label(), k, "orthogonality"))
    return _row(
        9,
        "torsion/localization property suite",
        not bad,
        "%d suites, %d orthogonality pairs" % (checked, ortho_checked)
        if not bad
        else "failed on %s" % bad[:3],
    )


def _finite_spectrum_rings():
    rings = [ModularIntegers(n) for n in MODULI]
    rings.append(LocalNilpotentAlgebra(2, (("x", 2), ("y", 3))))
    rings.append(IntegersLocalized(at_prime=2))
    return rings


def criterion_eta_factorization(seed=DEFAULT_SEED, **_kw):
    checked, bad = 0, []
    data = [canonical_datum(space) for space in _spaces(3)]
    data.extend(canonical_datum(spec(ring).space) for ring in _finite_spectrum_rings())
    for datum in data:
        checked += 1
        try:
            result = construct_eta(datum, seed=seed)
            ok = result.hom is not None and eta_is_unique(datum, result)
        except Exception:
            ok = False
        if not ok:
            bad.append(repr(datum.space.order))
    return _row(
        10,
        "eta exists and is unique",
        not bad,
        "%d data" % checked if not bad else "failed on %s" % bad[:3],
    )


def criterion_snf_selfcheck(seed=DEFAULT_SEED, count=1000, **_kw):
    rng = random.Random("%s|snf" % seed)
    checked, bad = 0, []
    for k in range(count):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = [
            [rng.randint(-SNF_ENTRY_BOUND, SNF_ENTRY_BOUND) for _ in range(cols)]
            for _ in range(rows)
        ]
        d, u, v = smith_normal_form(a)
        checked += 1
        if mat_mul(mat_mul(u, a), v) != d:
            bad.append(k)
            continue
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag) - 1):
            if diag[i] == 0 and diag[i + 1] != 0:
                bad.append(k)
            elif diag[i] != 0 and diag[i + 1] % diag[i]:
                bad.append(k)
    return _row(
        11,
        "Smith form self-check",
        not bad,
        "%d matrices" % checked if not bad else "failed on indices %s" % bad[:3],
    )


def criterion_generator_determinism(seed=DEFAULT_SEED, samples=DEFAULT_SAMPLES, **_kw):
    """The instance stream itself is reproducible; byte-identical output of
    the command-line suite is asserted on top of this in the test suite."""

    def dump():
        return json.dumps(
            [
                [cx.to_json() for cx in instances(ring, samples, seed)]
                for ring in ring_classes()
            ],
            sort_keys=True,
        )

    same = dump() == dump()
    return _row(
        12,
        "seeded reproducibility",
        same,
        "instance streams identical for seed %s" % seed,
    )


CRITERIA = (
    criterion_nucleus_count,
    criterion_sigma_iso,
    criterion_weakly_scattered_equivalences,
    criterion_scattered_equivalences,
    criterion_zset_maximality,
    criterion_vanishing,
    criterion_noetherian_agreement,
    criterion_weak_associated_inclusion,
    criterion_property_suite,
    criterion_eta_factorization,
    criterion_snf_selfcheck,
    criterion_generator_determinism,
)


def run_battery(
    seed=DEFAULT_SEED,
    samples=DEFAULT_SAMPLES,
    max_poset=POSET_BOUND,
    zset_max=ZSET_POSET_BOUND,
):
    if samples < 1:
        raise InputError("need at least one sample per ring")
    pool = _all_instances(seed, samples)
    rows = []
    for fn in CRITERIA:
        rows.append(
            fn(
                seed=seed,
                samples=samples,
                max_poset=max_poset,
                zset_max=zset_max,
                pool=pool,
            )
        )
    return rows
