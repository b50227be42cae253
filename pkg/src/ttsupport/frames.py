"""Finite frames, frame homomorphisms, nuclei and the assembly.

A finite frame is a finite distributive lattice; the constructor validates
boundedness, existence/uniqueness of binary meets and joins, and
distributivity.  Heyting implication exists automatically and is computed by
its defining join.
"""

from .errors import InputError, ResourceLimitError
from .poset import FinitePoset
from .spectral import SpectralSpace

ASSEMBLY_MAX = 20
HOM_SEARCH_MAX = 200000


def set_label(s):
    return "{%s}" % ",".join(sorted(s))


class FiniteFrame:
    __slots__ = ("order", "bottom", "top", "_meet", "_join", "_heyting")

    def __init__(self, order):
        if not isinstance(order, FinitePoset):
            raise InputError("FiniteFrame wants a FinitePoset")
        self.order = order
        els = order.elements
        if not els:
            raise InputError("a frame is nonempty")
        bottoms = [e for e in els if all(order.leq(e, x) for x in els)]
        tops = [e for e in els if all(order.leq(x, e) for x in els)]
        if len(bottoms) != 1 or len(tops) != 1:
            raise InputError("lattice is not bounded")
        self.bottom = bottoms[0]
        self.top = tops[0]
        self._meet = {}
        self._join = {}
        for x in els:
            for y in els:
                lb = [z for z in els if order.leq(z, x) and order.leq(z, y)]
                glb = [z for z in lb if all(order.leq(w, z) for w in lb)]
                ub = [z for z in els if order.leq(x, z) and order.leq(y, z)]
                lub = [z for z in ub if all(order.leq(z, w) for w in ub)]
                if len(glb) != 1 or len(lub) != 1:
                    raise InputError("not a lattice: meet/join fails on (%r, %r)" % (x, y))
                self._meet[(x, y)] = glb[0]
                self._join[(x, y)] = lub[0]
        for x in els:
            for y in els:
                for z in els:
                    lhs = self._meet[(x, self._join[(y, z)])]
                    rhs = self._join[(self._meet[(x, y)], self._meet[(x, z)])]
                    if lhs != rhs:
                        raise InputError("lattice is not distributive")
        self._heyting = {}

    @classmethod
    def from_sets(cls, sets):
        """Frame of a family of sets ordered by inclusion (the family must be
        closed under the induced meets/joins, which the validator enforces)."""
        sets = [frozenset(s) for s in sets]
        labels = {}
        for s in sets:
            labels[set_label(s)] = s
        rel = {
            (a, b)
            for a in labels
            for b in labels
            if labels[a] <= labels[b]
        }
        frame = cls(FinitePoset(tuple(sorted(labels)), rel))
        return frame, labels

    @property
    def elements(self):
        return self.order.elements

    def __len__(self):
        return len(self.order.elements)

    def leq(self, x, y):
        return self.order.leq(x, y)

    def meet(self, x, y):
        return self._meet[(x, y)]

    def join(self, x, y):
        return self._join[(x, y)]

    def meet_many(self, xs):
        out = self.top
        for x in xs:
            out = self._meet[(out, x)]
        return out

    def join_many(self, xs):
        out = self.bottom
        for x in xs:
            out = self._join[(out, x)]
        return out

    def heyting(self, x, y):
        """x -> y, the largest z with z ∧ x <= y."""
        key = (x, y)
        if key not in self._heyting:
            self._heyting[key] = self.join_many(
                z for z in self.elements if self.leq(self.meet(z, x), y)
            )
        return self._heyting[key]

    def complement(self, x):
        """The complement of x when it exists (unique in a distributive
        lattice), else None."""
        found = None
        for y in self.elements:
            if self.meet(x, y) == self.bottom and self.join(x, y) == self.top:
                assert found is None, "two complements in a distributive lattice"
                found = y
        return found

    def is_boolean(self):
        return all(self.complement(x) is not None for x in self.elements)

    def primes(self):
        """Prime (= meet-irreducible) elements p != top:
        x ∧ y <= p forces x <= p or y <= p."""
        out = []
        for p in self.elements:
            if p == self.top:
                continue
            ok = all(
                self.leq(x, p) or self.leq(y, p)
                for x in self.elements
                for y in self.elements
                if self.leq(self.meet(x, y), p)
            )
            if ok:
                out.append(p)
        return sorted(out)

    def min_primes(self, x):
        """Minimal primes above x."""
        above = [p for p in self.primes() if self.leq(x, p)]
        return sorted(p for p in above if not any(q != p and self.leq(q, p) for q in above))

    def essential_primes(self, x):
        """Primes in min_primes(x) whose removal changes the meet.  Empty
        when x is not even the meet of its minimal primes."""
        mins = self.min_primes(x)
        if self.meet_many(mins) != x:
            return []
        return sorted(
            p for p in mins if self.meet_many(q for q in mins if q != p) != x
        )

    def is_isomorphic_to(self, other):
        return self.order.is_isomorphic_to(other.order)

    def __repr__(self):
        return "FiniteFrame(%d elements)" % len(self)


class FrameHom:
    """A map of frames preserving bottom, top, binary meets and binary joins
    (for finite frames this is full frame-hom strength)."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping):
        if set(mapping) != set(source.elements):
            raise InputError("hom mapping must be defined on exactly the source")
        if not set(mapping.values()) <= set(target.elements):
            raise InputError("hom image leaves the target")
        if mapping[source.bottom] != target.bottom:
            raise InputError("hom does not preserve bottom")
        if mapping[source.top] != target.top:
            raise InputError("hom does not preserve top")
        for x in source.elements:
            for y in source.elements:
                if mapping[source.meet(x, y)] != target.meet(mapping[x], mapping[y]):
                    raise InputError("hom does not preserve meets")
                if mapping[source.join(x, y)] != target.join(mapping[x], mapping[y]):
                    raise InputError("hom does not preserve joins")
        self.source = source
        self.target = target
        self.mapping = dict(mapping)

    def __call__(self, x):
        return self.mapping[x]

    def is_injective(self):
        return len(set(self.mapping.values())) == len(self.mapping)

    def is_surjective(self):
        return set(self.mapping.values()) == set(self.target.elements)

    def is_isomorphism(self):
        return self.is_injective() and self.is_surjective()

    def compose(self, earlier):
        """self ∘ earlier."""
        return FrameHom(
            earlier.source, self.target, {x: self(earlier(x)) for x in earlier.source.elements}
        )

    def is_complemented(self):
        return all(self.target.complement(self(x)) is not None for x in self.source.elements)


class Nucleus:
    """An inflationary, monotone, idempotent, meet-preserving self-map."""

    __slots__ = ("frame", "table", "label")

    def __init__(self, frame, table):
        ok, report = validate_nucleus(frame, table)
        if not ok:
            raise InputError("not a nucleus: " + "; ".join(report))
        self.frame = frame
        self.table = dict(table)
        self.label = "nu(%s)" % "|".join(sorted(self.fixed_points()))

    def __call__(self, x):
        return self.table[x]

    def fixed_points(self):
        return frozenset(x for x in self.frame.elements if self.table[x] == x)

    def __eq__(self, other):
        return isinstance(other, Nucleus) and self.frame is other.frame and self.table == other.table

    def __hash__(self):
        return hash(frozenset(self.table.items()))

    def __repr__(self):
        return self.label


def validate_nucleus(frame, table):
    """Check the four nucleus axioms literally; returns (ok, report)."""
    report = []
    if set(table) != set(frame.elements):
        return False, ["table must be defined on exactly the frame"]
    for x in frame.elements:
        if not frame.leq(x, table[x]):
            report.append("not inflationary at %r" % x)
        if table[table[x]] != table[x]:
            report.append("not idempotent at %r" % x)
        for y in frame.elements:
            if frame.leq(x, y) and not frame.leq(table[x], table[y]):
                report.append("not monotone on (%r, %r)" % (x, y))
            if table[frame.meet(x, y)] != frame.meet(table[x], table[y]):
                report.append("does not preserve the meet of (%r, %r)" % (x, y))
    return not report, report


def closed_nucleus(frame, x):
    return Nucleus(frame, {y: frame.join(x, y) for y in frame.elements})


def open_nucleus(frame, x):
    return Nucleus(frame, {y: frame.heyting(x, y) for y in frame.elements})


def _meet_closed_subsets(frame):
    """All subsets containing top and closed under binary meets.

    Elements are processed in an order where y < x implies y comes after x,
    so closing up under meets only ever adds not-yet-decided elements."""
    els = sorted(frame.elements, key=lambda e: (-len(frame.order.down_set(e)), e))
    assert els[0] == frame.top
    results = []

    def close(s, new):
        s = set(s)
        frontier = set(new)
        while frontier:
            nxt = set()
            for a in frontier:
                for b in list(s):
                    m = frame.meet(a, b)
                    if m not in s and m not in nxt and m not in frontier:
                        nxt.add(m)
                s.add(a)
            frontier = nxt
        return frozenset(s)

    def rec(i, s):
        while i < len(els) and els[i] in s:
            i += 1
        if i == len(els):
            results.append(s)
            return
        rec(i + 1, s)
        rec(i + 1, close(s, {els[i]}))

    rec(1, frozenset({frame.top}))
    return results


class AssemblyResult:
    __slots__ = ("base", "frame", "nuclei", "alpha", "alpha_complement")

    def __init__(self, base, frame, nuclei, alpha, alpha_complement):
        self.base = base
        self.frame = frame
        self.nuclei = nuclei  # label -> Nucleus
        self.alpha = alpha  # FrameHom base -> frame
        self.alpha_complement = alpha_complement  # base element -> label


def assembly(frame, max_size=ASSEMBLY_MAX):
    """The frame of all nuclei, ordered pointwise.

    Every nucleus is a closure operator and is determined by its fixed-point
    set, which is meet-closed and contains top; so the enumeration walks the
    meet-closed subsets and keeps those whose induced closure preserves
    binary meets.
    """
    if len(frame) > max_size:
        raise ResourceLimitError(
            "assembly bound exceeded: %d > %d" % (len(frame), max_size),
            bound_name="max_frame",
            bound_value=max_size,
        )
    nuclei = []
    for s in _meet_closed_subsets(frame):
        table = {
            x: frame.meet_many(t for t in s if frame.leq(x, t)) for x in frame.elements
        }
        ok = all(
            table[frame.meet(x, y)] == frame.meet(table[x], table[y])
            for x in frame.elements
            for y in frame.elements
        )
        if ok:
            nuclei.append(Nucleus(frame, table))
    by_label = {nu.label: nu for nu in nuclei}
    rel = {
        (a, b)
        for a in by_label
        for b in by_label
        if all(frame.leq(by_label[a](x), by_label[b](x)) for x in frame.elements)
    }
    nframe = FiniteFrame(FinitePoset(tuple(sorted(by_label)), rel))
    alpha = FrameHom(
        frame, nframe, {x: closed_nucleus(frame, x).label for x in frame.elements}
    )
    alpha_complement = {x: open_nucleus(frame, x).label for x in frame.elements}
    for x in frame.elements:
        assert nframe.complement(alpha(x)) == alpha_complement[x], (
            "open nucleus is not the complement of the closed one"
        )
    return AssemblyResult(frame, nframe, by_label, alpha, alpha_complement)


def nucleus_join(frame, nu, mu):
    """Pointwise join iterated to its fixpoint; cross-check for the lattice
    join of the assembly."""
    table = {x: x for x in frame.elements}
    changed = True
    while changed:
        changed = False
        for x in frame.elements:
            y = frame.join(nu(table[x]), mu(table[x]))
            if y != table[x]:
                table[x] = y
                changed = True
    return Nucleus(frame, table)


def frame_of(space):
    """Frame of opens (= down-sets) of a finite spectral space, with set
    labels."""
    frame, labels = FiniteFrame.from_sets(space.opens())
    return frame, labels


def spc(frame):
    """Point space of a frame: primes under the restricted order, together
    with the comparison hom x |-> D(x) and its spatiality verdict."""
    primes = frame.primes()
    order = frame.order.restrict(primes)
    space = SpectralSpace(order)
    opens_frame, labels = frame_of(space)
    mapping = {
        x: set_label(frozenset(p for p in primes if not frame.leq(x, p)))
        for x in frame.elements
    }
    lam = FrameHom(frame, opens_frame, mapping)
    return space, lam, lam.is_isomorphism()


def frame_homs(source, target, bound=HOM_SEARCH_MAX):
    """All frame homs source -> target by exhaustive search over images of
    join-irreducibles.  Intended for desk-scale uniqueness checks only."""
    joinirr = [
        x
        for x in source.elements
        if x != source.bottom
        and len(
            [y for y in source.elements if source.leq(y, x) and y != x
             and not any(z != y and z != x and source.leq(y, z) and source.leq(z, x)
                         for z in source.elements)]
        ) == 1
    ]
    total = len(target.elements) ** len(joinirr)
    if total > bound:
        raise ResourceLimitError(
            "frame hom search bound exceeded: %d > %d" % (total, bound),
            bound_name="hom_search",
            bound_value=bound,
        )
    out = []
    tgt = list(target.elements)

    def rec(i, assignment):
        if i == len(joinirr):
            mapping = {
                x: target.join_many(assignment[j] for j in joinirr if source.leq(j, x))
                for x in source.elements
            }
            try:
                out.append(FrameHom(source, target, mapping))
            except InputError:
                pass
            return
        for t in tgt:
            assignment[joinirr[i]] = t
            rec(i + 1, assignment)
        del assignment[joinirr[i]]

    rec(0, {})
    return out


def universal_factorization(asm, phi, check_unique=False):
    """Factor a complemented hom phi through the assembly of its source.

    Returns the unique FrameHom psi with psi ∘ alpha = phi.  Uses the
    expansion of a nucleus as the join over x of (closed at nu(x)) meet
    (open at x); complements in the distributive target are unique, which
    pins psi down.
    """
    frame = asm.base
    if phi.source is not frame:
        raise InputError("phi must start at the assembled frame's base")
    target = phi.target
    comp = {}
    for x in frame.elements:
        c = target.complement(phi(x))
        if c is None:
            raise InputError("phi is not complemented at %r" % x)
        comp[x] = c
    mapping = {}
    for label, nu in asm.nuclei.items():
        mapping[label] = target.join_many(
            target.meet(phi(nu(x)), comp[x]) for x in frame.elements
        )
    psi = FrameHom(asm.frame, target, mapping)
    for x in frame.elements:
        assert psi(asm.alpha(x)) == phi(x), "factorization triangle failed"
    if check_unique:
        matches = [
            h
            for h in frame_homs(asm.frame, target)
            if all(h(asm.alpha(x)) == phi(x) for x in frame.elements)
        ]
        assert len(matches) == 1 and matches[0].mapping == psi.mapping, (
            "factorization is not unique"
        )
    return psi


def sigma(space, check_unique=False):
    """The comparison hom from the assembly of the open-set frame to the
    frame of opens of the same point set with every singleton isolated.
    Returns (hom, is_isomorphism, assembly_result)."""
    frame, labels = frame_of(space)
    asm = assembly(frame)
    skula_frame, _slabels = FiniteFrame.from_sets(space.skula_opens())
    phi = FrameHom(
        frame, skula_frame, {x: set_label(labels[x]) for x in frame.elements}
    )
    psi = universal_factorization(asm, phi, check_unique=check_unique)
    return psi, psi.is_isomorphism(), asm
