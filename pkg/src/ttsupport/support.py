"""Support of complexes over the supported base rings.

The small support of a complex is computed pointwise: localize at a
candidate prime, tensor with the stable two-term complex R -> R[1/x] for
generators x of the prime, and ask whether any cohomology survives.  Over
the integers the support of a complex with free cohomology ranks is
cofinite, so descriptors carry generic/cofinite flags instead of trying to
list infinitely many points.
"""

from dataclasses import dataclass

from .errors import InputError
from .homalg import (
    ChainComplex,
    IntegersLocalized,
    LnaModule,
    LocalNilpotentAlgebra,
    ModularIntegers,
    PresentedModule,
    derived_tensor_residue,
    hom_complex_h0,
    koszul_stable,
    localize,
    localize_by_element,
    cone,
    zero_complex,
)
from .poset import FinitePoset
from .smith import factorize
from .spectral import SpectralSpace


# ---------------------------------------------------------------------------
# the prime spectrum


@dataclass(frozen=True)
class SpecOf:
    """Prime spectrum data of a base ring.  For finite spectra the space is
    materialized; for integer flavours the closed points form an infinite
    discrete crowd under a single generic point and only a description is
    kept."""

    ring: object
    space: object  # SpectralSpace or None when infinite
    closed_points: tuple  # labels, () when infinite
    has_generic: bool
    description: str


def prime_label(p):
    return "m" if p == "m" else "(%d)" % p


def spec(ring):
    if isinstance(ring, ModularIntegers):
        points = tuple(prime_label(p) for p in ring.prime_divisors())
        order = FinitePoset(points, {(a, a) for a in points})
        return SpecOf(ring, SpectralSpace(order), points, False, "finite discrete")
    if isinstance(ring, LocalNilpotentAlgebra):
        order = FinitePoset(("m",), {("m", "m")})
        return SpecOf(ring, SpectralSpace(order), ("m",), False, "one-point local")
    if isinstance(ring, IntegersLocalized):
        if ring.at_prime is not None:
            points = (prime_label(ring.at_prime),)
            order = FinitePoset(
                ("(0)", points[0]),
                {("(0)", "(0)"), (points[0], points[0]), ("(0)", points[0])},
            )
            return SpecOf(ring, SpectralSpace(order), points, True, "local, one closed point")
        return SpecOf(
            ring, None, (), True, "generic point plus all primes outside the inverted set"
        )
    raise InputError("unknown ring")


# ---------------------------------------------------------------------------
# support descriptors


@dataclass(frozen=True)
class SupportDescriptor:
    """A subset of the spectrum: an explicit set of closed primes, or (for
    the integer flavours) 'generic point plus all closed points except the
    listed exceptions'."""

    generic: bool = False
    cofinite: bool = False
    explicit: frozenset = frozenset()
    exceptions: frozenset = frozenset()

    def __post_init__(self):
        if self.cofinite and self.explicit:
            raise InputError("cofinite descriptors list exceptions, not members")
        if not self.cofinite and self.exceptions:
            raise InputError("exceptions only make sense for cofinite descriptors")
        if self.exceptions & self.explicit:
            raise InputError("exception set must be disjoint from explicit primes")

    @property
    def is_empty(self):
        return not self.generic and not self.cofinite and not self.explicit

    def contains(self, p):
        if p == 0:
            return self.generic
        if self.cofinite:
            return p not in self.exceptions
        return p in self.explicit

    def closed_set(self):
        assert not self.cofinite, "cofinite support has no finite closed list"
        return self.explicit

    def agrees_on(self, other, sample):
        return self.generic == other.generic and all(
            self.contains(p) == other.contains(p) for p in sample
        )

    def __str__(self):
        if self.cofinite:
            body = "all closed points" + (
                " except {%s}" % ",".join(prime_label(p) for p in sorted(self.exceptions))
                if self.exceptions
                else ""
            )
        else:
            body = "{%s}" % ",".join(
                prime_label(p) for p in sorted(self.explicit, key=str)
            )
        return ("(0) + " if self.generic else "") + body


def descriptor_from_set(primes):
    return SupportDescriptor(explicit=frozenset(primes))


# ---------------------------------------------------------------------------
# candidate primes


def candidate_primes(cx):
    """Closed-point candidates: non-unit primes dividing any matrix entry of
    the complex or any invariant factor of its cohomology.  Outside this set
    localization kills every presentation entry's torsion, so membership is
    decided by the free ranks alone."""
    ring = cx.ring
    assert isinstance(ring, IntegersLocalized)
    seen = set()
    for m in cx.modules:
        for row in m.rel:
            for v in row:
                if v:
                    seen.update(factorize(v))
    for d in cx.differentials:
        for row in d:
            for v in row:
                if v:
                    seen.update(factorize(v))
    for i in cx.degrees():
        for f in cx.cohomology(i).factors:
            seen.update(factorize(f))
    return tuple(sorted(q for q in seen if not ring.is_unit_prime(q)))


def _total_rank(cx):
    return sum(cx.cohomology(i).rank for i in cx.degrees())


# ---------------------------------------------------------------------------
# the three supports


def small_support(cx, sequence_length=1):
    """Pointwise stable-Koszul support.

    At a closed candidate prime q the test tensors the localized complex
    with R -> R[1/x] for every sequence of generators x of length up to
    sequence_length (a maximal ideal here is principal, so checking the
    generator once decides it; longer sequences are for cross-checks)."""
    ring = cx.ring
    if isinstance(ring, LocalNilpotentAlgebra):
        hit = _lna_in_support(cx, sequence_length)
        return SupportDescriptor(explicit=frozenset({"m"} if hit else set()))
    if isinstance(ring, ModularIntegers):
        found = set()
        for q in ring.prime_divisors():
            if _modular_in_support(cx, q, sequence_length):
                found.add(q)
        return SupportDescriptor(explicit=frozenset(found))
    if isinstance(ring, IntegersLocalized):
        rank = _total_rank(cx)
        generic = rank > 0  # sequences inside (0) are zero; K(0) ⊗ C_0 = C ⊗ Q
        if generic:
            # every closed point survives: torsion candidates pass the Koszul
            # test and at torsion-free primes the free rank alone keeps the
            # localized complex alive
            for q in candidate_primes(cx):
                assert _integer_in_support(cx, q, sequence_length)
            return SupportDescriptor(generic=True, cofinite=True)
        found = set()
        for q in candidate_primes(cx):
            if _integer_in_support(cx, q, sequence_length):
                found.add(q)
        return SupportDescriptor(explicit=frozenset(found))
    raise InputError("unknown ring")


def _integer_in_support(cx, q, sequence_length):
    local = localize(cx, q)
    current = local
    verdicts = []
    for _ in range(max(1, sequence_length)):
        current = koszul_stable(q, current)
        verdicts.append(not current.is_acyclic())
    assert len(set(verdicts)) == 1, "iterated Koszul rounds disagree"
    return verdicts[0]


def _modular_in_support(cx, q, sequence_length):
    local = localize(cx, q)
    current = local
    verdicts = []
    for _ in range(max(1, sequence_length)):
        current = koszul_stable(q, current)
        verdicts.append(not current.is_acyclic())
    assert len(set(verdicts)) == 1, "iterated Koszul rounds disagree"
    return verdicts[0]


def _lna_in_support(cx, sequence_length):
    verdicts = []
    for name, _e in cx.ring.generators:
        current = cx
        for _ in range(max(1, sequence_length)):
            current = koszul_stable(name, current)
        verdicts.append(not current.is_acyclic())
    assert len(set(verdicts)) == 1, "generators disagree on the support test"
    return verdicts[0]


def big_support(cx):
    """Localization support: primes where the localized complex is not
    acyclic.  No Koszul tensor involved."""
    ring = cx.ring
    if isinstance(ring, LocalNilpotentAlgebra):
        return SupportDescriptor(
            explicit=frozenset({"m"} if not cx.is_acyclic() else set())
        )
    if isinstance(ring, ModularIntegers):
        found = {
            q for q in ring.prime_divisors() if not localize(cx, q).is_acyclic()
        }
        return SupportDescriptor(explicit=frozenset(found))
    if isinstance(ring, IntegersLocalized):
        rank = _total_rank(cx)
        if rank > 0:
            return SupportDescriptor(generic=True, cofinite=True)
        found = {
            q for q in candidate_primes(cx) if not localize(cx, q).is_acyclic()
        }
        return SupportDescriptor(explicit=frozenset(found))
    raise InputError("unknown ring")


def foxby_support(cx):
    """Residue-field support: primes p with C ⊗^L k(p) not acyclic."""
    ring = cx.ring
    if isinstance(ring, ModularIntegers):
        as_z = restrict_to_integers(cx)
        inner = foxby_support(as_z)
        assert not inner.cofinite
        return inner
    if isinstance(ring, LocalNilpotentAlgebra):
        # the residue field is the base field; C ⊗^L k is computed from an
        # honest two-step free approximation degreewise -- but over a local
        # ring a bounded complex is residue-acyclic iff it is acyclic, and
        # cohomology here is plain linear algebra, so that is the test
        return SupportDescriptor(
            explicit=frozenset({"m"} if not cx.is_acyclic() else set())
        )
    if isinstance(ring, IntegersLocalized):
        rank = _total_rank(cx)
        if derived_tensor_residue(cx, 0).is_nonzero:
            for q in candidate_primes(cx):
                assert derived_tensor_residue(cx, q).is_nonzero
            return SupportDescriptor(generic=True, cofinite=True)
        assert rank == 0
        found = {
            q
            for q in candidate_primes(cx)
            if derived_tensor_residue(cx, q).is_nonzero
        }
        return SupportDescriptor(explicit=frozenset(found))
    raise InputError("unknown ring")


def detect_vanishing(cx):
    """Support-theoretic zero test: True iff the small support is empty."""
    return small_support(cx).is_empty


# ---------------------------------------------------------------------------
# weakly associated primes


def weakly_associated(module):
    """Primes attached to a module through its canonical decomposition: the
    generic point when there is free rank, and every non-unit prime dividing
    an invariant factor (each such prime is minimal over the annihilator of
    the corresponding cyclic summand's generator)."""
    if isinstance(module, LnaModule):
        return frozenset({"m"} if module.dim else set())
    if isinstance(module, PresentedModule):
        canon = module.canonical()
        ring = module.ring
    else:  # CanonicalModule straight from cohomology
        canon = module
        ring = None
    out = set()
    if canon.rank:
        out.add(0)
    for d in canon.factors:
        for q in factorize(d):
            if ring is None or not getattr(ring, "is_unit_prime", lambda _q: False)(q):
                out.add(q)
    for q, _m in canon.divisible:
        out.add(q)
    return frozenset(out)


# ---------------------------------------------------------------------------
# compatibility checks


def restrict_to_integers(cx):
    """Restriction of scalars along Z -> Z/n: same generators, relations
    extended by n times each generator."""
    ring = cx.ring
    if not isinstance(ring, ModularIntegers):
        raise InputError("integer restriction starts from Z/n")
    z = IntegersLocalized()
    mods = []
    for m in cx.modules:
        rel = [row[:] for row in m.rel]
        for i in range(m.ngens):
            for r in range(m.ngens):
                rel[r].append(ring.n if r == i else 0)
        mods.append(PresentedModule(z, m.ngens, rel))
    return ChainComplex(z, cx.min_deg, mods, cx.differentials)


def restrict_modulus(cx, n):
    """Restriction of scalars along Z/n -> Z/m for m | n."""
    ring = cx.ring
    if not isinstance(ring, ModularIntegers) or n % ring.n:
        raise InputError("restriction needs the old modulus to divide the new one")
    big = ModularIntegers(n)
    mods = []
    for m in cx.modules:
        rel = [row[:] for row in m.rel]
        for i in range(m.ngens):
            for r in range(m.ngens):
                rel[r].append(ring.n if r == i else 0)
        mods.append(PresentedModule(big, m.ngens, rel))
    return ChainComplex(big, cx.min_deg, mods, cx.differentials)


def localize_support_check(cx, invert):
    """Inverting a finite prime set W cuts the support down to the primes
    outside W: supp(C[W^{-1}]) = supp(C) minus V-of-W.  Returns (ok, both
    descriptors)."""
    ring = cx.ring
    if not isinstance(ring, IntegersLocalized) or ring.at_prime is not None:
        raise InputError("localization check is for the plain integer flavours")
    invert = frozenset(invert)
    new_ring = IntegersLocalized(inverted=ring.inverted | invert)
    mods = [PresentedModule(new_ring, m.ngens, m.rel) for m in cx.modules]
    localized = ChainComplex(new_ring, cx.min_deg, mods, cx.differentials)
    before = small_support(cx)
    after = small_support(localized)
    sample = set(candidate_primes(cx)) | invert | {0}
    ok = all(
        after.contains(p) == (before.contains(p) and p not in invert and p != 0)
        for p in sample
        if p != 0
    ) and after.generic == before.generic
    return ok, before, after


def base_change_check(cx, source):
    """Restriction of scalars compatibility: the support computed over the
    source ring equals the (label-preserving) image of the support over the
    quotient ring.  source is either "Z" (for complexes over Z/n) or an
    integer N (for restriction Z/n -> Z/N with n | N)."""
    ring = cx.ring
    if not isinstance(ring, ModularIntegers):
        raise InputError("base change check starts from a Z/n complex")
    upstairs = small_support(cx).closed_set()
    if source == "Z":
        restricted = restrict_to_integers(cx)
        downstairs = small_support(restricted)
        assert not downstairs.cofinite and not downstairs.generic
        return upstairs == downstairs.closed_set(), upstairs, downstairs.closed_set()
    restricted = restrict_modulus(cx, source)
    downstairs = small_support(restricted)
    return upstairs == downstairs.closed_set(), upstairs, downstairs.closed_set()


# ---------------------------------------------------------------------------
# torsion / localization functors over Z/n and the property suite


def crt_element(ring, v_primes):
    """x with x ≡ 0 at the p-parts inside V and x ≡ 1 outside; then the
    vanishing locus of x is exactly V."""
    if not isinstance(ring, ModularIntegers):
        raise InputError("CRT elements live in Z/n")
    v_primes = set(v_primes)
    n = ring.n
    x = 0
    for p, k in factorize(n).items():
        pk = p**k
        rest = n // pk
        if p not in v_primes:
            # add the idempotent-ish piece congruent to 1 mod p^k, 0 elsewhere
            inv = pow(rest, -1, pk)
            x += rest * inv
    return x % n


def torsion_functor(cx, v_primes):
    """Γ_V as the stable Koszul complex on a defining element of V."""
    return koszul_stable(crt_element(cx.ring, v_primes), cx)


def localization_functor(cx, v_primes):
    """L_V as localization away from V."""
    return localize_by_element(cx, crt_element(cx.ring, v_primes))


def main1_property_suite(cx, v_primes, other=None, scalar=0):
    """Named checks tying supports to the torsion/localization triangle over
    Z/n.  Returns a dict name -> bool.  other (a second complex) feeds the
    triangle and orthogonality items; scalar builds the cone over
    multiplication by that scalar when other is the same shape."""
    ring = cx.ring
    if not isinstance(ring, ModularIntegers):
        raise InputError("the property suite runs over Z/n")
    v_primes = frozenset(v_primes)
    supp = small_support(cx).closed_set()
    gamma = torsion_functor(cx, v_primes)
    ell = localization_functor(cx, v_primes)
    out = {}
    out["torsion_support"] = small_support(gamma).closed_set() == supp & v_primes
    out["localized_support"] = small_support(ell).closed_set() == supp - v_primes
    out["supp_in_v_iff_localization_dies"] = (supp <= v_primes) == ell.is_acyclic()
    out["supp_misses_v_iff_torsion_dies"] = (not supp & v_primes) == gamma.is_acyclic()
    out["small_inside_big"] = supp <= big_support(cx).closed_set()
    out["big_inside_small"] = big_support(cx).closed_set() <= supp
    if other is not None:
        supp2 = small_support(other).closed_set()
        zero_blocks = {}
        mapped = cone(zero_blocks, other, cx)  # triangle C -> cone -> other[1]
        out["triangle_union"] = small_support(mapped).closed_set() <= supp | supp2
    if scalar:
        blocks = {
            i: [
                [scalar if r == c else 0 for c in range(cx.module(i).ngens)]
                for r in range(cx.module(i).ngens)
            ]
            for i in cx.degrees()
        }
        mapped = cone(blocks, cx, cx)
        out["triangle_scalar"] = small_support(mapped).closed_set() <= supp
    return out


def orthogonality_check(cx, other, v_primes, window=(-2, 2)):
    """With supp(first) inside V and supp(second) missing V, every shifted
    Hom group in the window vanishes.  Returns (applicable, ok, result)."""
    first = torsion_functor(cx, v_primes)
    second = localization_functor(other, v_primes)
    s1 = small_support(first).closed_set()
    s2 = small_support(second).closed_set()
    applicable = s1 <= frozenset(v_primes) and not (s2 & frozenset(v_primes))
    res = hom_complex_h0(first, second, window=window)
    ok = bool(res.certified and res.all_vanish)
    return applicable, ok, res
