"""Abstract support data on a finite spectral space.

A datum is a frame map gamma from the Thomason sets of a space into an
abstract ("Bousfield") frame, together with recorded complements of the
image elements.  When the complements really are complements, gamma extends
through the frame of all localizing subsets (every subset of the finite
point set) by writing a subset as a union of differences of Thomason sets;
construct_eta builds that extension and stress-tests its independence of
the chosen presentation with randomized covers.
"""

import random

from .errors import InputError
from .frames import FiniteFrame, FrameHom, frame_homs, set_label
from .poset import FinitePoset
from .spectral import SpectralSpace


def thomason_frame(space):
    """Frame of Thomason (= up-) sets of a finite spectral space."""
    frame, labels = FiniteFrame.from_sets(space.thomason_sets())
    return frame, labels


def localizing_frame(space):
    """Frame of opens for the localizing topology: the Skula opens of the
    Hochster dual, computed from the generated topology (and checked to be
    the full powerset elsewhere, not assumed)."""
    frame, labels = FiniteFrame.from_sets(space.hochster_dual().skula_opens())
    return frame, labels


class SupportDatum:
    """(space, bousfield frame, gamma, recorded complements).

    gamma must be a frame map out of the Thomason frame; the recorded
    complements are validated separately by check_complements so that
    non-complemented data can be represented and rejected downstream."""

    __slots__ = ("space", "bousfield", "gamma", "complements", "tframe", "tlabels")

    def __init__(self, space, bousfield, gamma, complements=None):
        if not isinstance(space, SpectralSpace):
            raise InputError("datum needs a SpectralSpace")
        if not isinstance(bousfield, FiniteFrame):
            raise InputError("datum needs a FiniteFrame target")
        self.space = space
        self.bousfield = bousfield
        self.tframe, self.tlabels = thomason_frame(space)
        self.gamma = FrameHom(self.tframe, bousfield, dict(gamma))
        if complements is None:
            complements = {}
            for v in self.tframe.elements:
                complements[v] = bousfield.complement(self.gamma(v))
        self.complements = dict(complements)

    def gamma_of_set(self, s):
        return self.gamma(set_label(frozenset(s)))

    def complement_of_set(self, s):
        return self.complements.get(set_label(frozenset(s)))

    @classmethod
    def from_json(cls, obj):
        """gamma is a list of [sorted point list, element] pairs; complements
        a list of [element, complement] pairs keyed by image elements."""
        required = {"space", "bousfield", "gamma", "complements"}
        if not isinstance(obj, dict) or not required <= set(obj):
            raise InputError("datum JSON needs space/bousfield/gamma/complements")
        space = SpectralSpace.from_json(obj["space"])
        bous = FiniteFrame(FinitePoset.from_json(obj["bousfield"]))
        gamma = {}
        for entry in obj["gamma"]:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise InputError("gamma entries must be [thomason-set, element] pairs")
            gamma[set_label(frozenset(entry[0]))] = entry[1]
        comp_by_element = {}
        for entry in obj["complements"]:
            if not (isinstance(entry, list) and len(entry) == 2):
                raise InputError("complement entries must be [element, element] pairs")
            comp_by_element[entry[0]] = entry[1]
        complements = {v: comp_by_element.get(g) for v, g in gamma.items()}
        return cls(space, bous, gamma, complements)

    def to_json(self):
        return {
            "space": self.space.order.to_json(),
            "bousfield": self.bousfield.order.to_json(),
            "gamma": [
                [sorted(self.tlabels[v]), self.gamma(v)]
                for v in sorted(self.tframe.elements)
            ],
            "complements": sorted(
                {(self.gamma(v), self.complements[v]) for v in self.tframe.elements}
            ),
        }


def check_complements(datum):
    """Verify every recorded complement against the frame operations.
    Returns (ok, list of offending Thomason labels)."""
    bad = []
    b = datum.bousfield
    for v in datum.tframe.elements:
        c = datum.complements.get(v)
        img = datum.gamma(v)
        if c is None or c not in b.elements:
            bad.append(v)
            continue
        if b.meet(img, c) != b.bottom or b.join(img, c) != b.top:
            bad.append(v)
    return not bad, bad


class EtaResult:
    __slots__ = ("hom", "frame", "labels", "cover_checks")

    def __init__(self, hom, frame, labels, cover_checks):
        self.hom = hom
        self.frame = frame
        self.labels = labels
        self.cover_checks = cover_checks


def construct_eta(datum, samples=50, seed=0):
    """Extend gamma to the localizing frame.

    Each subset S of the point set is covered by its singletons, and each
    singleton {p} is (smallest Thomason set containing p) minus (that set
    without p); eta(S) is the join of gamma(V_p) ∧ complement(gamma(U_p)).
    Raises InputError when the datum is not complemented.  Independence of
    the cover is then sampled: `samples` random alternative Thomason-pair
    covers per subset must give the same value.
    """
    ok, bad = check_complements(datum)
    if not ok:
        raise InputError("datum not complemented at %s" % ", ".join(sorted(bad)))
    space = datum.space
    b = datum.bousfield
    lframe, llabels = localizing_frame(space)
    order = space.order
    thomason = space.thomason_sets()

    def pair_value(v, u):
        return b.meet(datum.gamma_of_set(v), datum.complements[set_label(frozenset(u))])

    mapping = {}
    for label in lframe.elements:
        s = llabels[label]
        mapping[label] = b.join_many(
            pair_value(order.up_set(p), order.up_set(p) - {p}) for p in sorted(s)
        )
    eta = FrameHom(lframe, b, mapping)
    for v in datum.tframe.elements:
        if eta(set_label(datum.tlabels[v])) != datum.gamma(v):
            raise InputError("eta does not extend gamma at %s" % v)

    rng = random.Random(seed)
    pairs = [(v, u, v - u) for v in thomason for u in thomason]
    cover_checks = 0
    for label in sorted(lframe.elements):
        s = llabels[label]
        usable = [t for t in pairs if t[2] <= s]
        tried = 0
        found = 0
        while found < samples and tried < samples * 20:
            tried += 1
            take = rng.sample(usable, min(len(usable), rng.randint(1, len(s) + 2) if s else 1))
            union = frozenset().union(*(t[2] for t in take)) if take else frozenset()
            if union != s:
                continue
            found += 1
            value = b.join_many(pair_value(t[0], t[1]) for t in take)
            if value != mapping[label]:
                raise InputError(
                    "eta value depends on the chosen cover at %s" % label
                )
        cover_checks += found
    return EtaResult(eta, lframe, llabels, cover_checks)


def eta_is_unique(datum, eta_result, bound=200000):
    """Exhaustive search over frame homs out of the localizing frame that
    extend gamma; True when the constructed eta is the only one."""
    matches = [
        h
        for h in frame_homs(eta_result.frame, datum.bousfield, bound=bound)
        if all(
            h(set_label(datum.tlabels[v])) == datum.gamma(v)
            for v in datum.tframe.elements
        )
    ]
    return len(matches) == 1 and matches[0].mapping == eta_result.hom.mapping


def is_supportive(datum, samples=20, seed=0):
    """True when the datum is complemented and gamma extends to the
    localizing frame; (False, reason) otherwise."""
    ok, bad = check_complements(datum)
    if not ok:
        return False, "missing or wrong complements at: %s" % ", ".join(sorted(bad))
    try:
        construct_eta(datum, samples=samples, seed=seed)
    except InputError as exc:
        return False, str(exc)
    return True, ""


def canonical_datum(space):
    """The tautological datum: Bousfield frame = all subsets of the point
    set, gamma = inclusion of Thomason sets, complements = set complements."""
    points = frozenset(space.points)
    subsets = [frozenset()]
    for p in sorted(points):
        subsets += [s | {p} for s in subsets]
    bous, _labels = FiniteFrame.from_sets(subsets)
    gamma = {set_label(t): set_label(t) for t in space.thomason_sets()}
    complements = {
        set_label(t): set_label(points - t) for t in space.thomason_sets()
    }
    return SupportDatum(space, bous, gamma, complements)
