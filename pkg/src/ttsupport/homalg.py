"""Rings, finitely presented modules, cochain complexes and their cohomology.

Three base ring flavours are supported:

* ``IntegersLocalized`` -- the integers with a finite set of primes
  inverted, or ("at_prime" form) with every prime except one inverted.
  Modules are presented by integer matrices; inverted primes are stripped
  from invariant factors at canonicalization time.
* ``ModularIntegers`` -- Z/n.  Modules are presented by integer matrices
  with n*I folded in implicitly.
* ``LocalNilpotentAlgebra`` -- a truncated polynomial algebra
  F_p[x_1,...]/(x_i^{e_i}); modules are finite dimensional F_p vector
  spaces with commuting nilpotent generator actions.

Differentials raise degree by one.  d(a ⊗ b) = da ⊗ b + (-1)^|a| a ⊗ db is
the sign rule used for the two-term tensor constructions below.
"""

from dataclasses import dataclass, field

from . import smith
from .errors import InputError, ResourceLimitError
from .smith import (
    block_diag,
    diagonal,
    factorize,
    hstack,
    identity,
    kernel_basis,
    lattice_basis,
    mat_mul,
    quotient_invariants,
    smith_normal_form,
    solve_int,
    transpose,
    zeros,
)

HOM_GENS_MAX = 800


def _is_prime(q):
    return isinstance(q, int) and q >= 2 and list(factorize(q)) == [q]


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True)
class IntegersLocalized:
    inverted: frozenset = frozenset()
    at_prime: int | None = None

    def __post_init__(self):
        if self.at_prime is not None:
            if not _is_prime(self.at_prime):
                raise InputError("at_prime must be prime")
            if self.inverted:
                raise InputError("at_prime form keeps no explicit inverted set")
        else:
            object.__setattr__(self, "inverted", frozenset(self.inverted))
            if not all(_is_prime(q) for q in self.inverted):
                raise InputError("inverted set must consist of primes")

    @property
    def modulus(self):
        return 0

    def is_unit_prime(self, q):
        if self.at_prime is not None:
            return q != self.at_prime
        return q in self.inverted

    def is_unit(self, x):
        if not isinstance(x, int):
            raise InputError("ring elements here are integers")
        if x == 0:
            return False
        return all(self.is_unit_prime(q) for q in factorize(x))

    def localized_at(self, p):
        if self.is_unit_prime(p):
            raise InputError("cannot localize at an already inverted prime")
        return IntegersLocalized(at_prime=p)

    def strip_units(self, d):
        """Remove unit-prime parts from an invariant factor."""
        assert d > 0
        if self.at_prime is not None:
            p = self.at_prime
            out = 1
            while d % p == 0:
                out *= p
                d //= p
            return out
        for q in self.inverted:
            while d % q == 0:
                d //= q
        return d

    def label(self):
        if self.at_prime is not None:
            return "Z_(%d)" % self.at_prime
        if self.inverted:
            return "Z[1/%s]" % ",".join(str(q) for q in sorted(self.inverted))
        return "Z"

    def to_json(self):
        if self.at_prime is not None:
            return {"type": "Z", "at_prime": self.at_prime}
        return {"type": "Z", "inverted": sorted(self.inverted)}


@dataclass(frozen=True)
class ModularIntegers:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InputError("ModularIntegers wants n >= 2")

    @property
    def modulus(self):
        return self.n

    def prime_divisors(self):
        return tuple(sorted(factorize(self.n)))

    def is_unit(self, x):
        if not isinstance(x, int):
            raise InputError("ring elements here are integers")
        from math import gcd

        return gcd(x, self.n) == 1

    def residue_modulus(self, p):
        """p-part p^k of n."""
        f = factorize(self.n)
        if p not in f:
            raise InputError("%d does not divide the modulus" % p)
        return p ** f[p]

    def coprime_part(self, x):
        """Largest divisor n' of n coprime to x; inverting x lands in Z/n'."""
        out = 1
        for p, k in factorize(self.n).items():
            if x % p != 0:
                out *= p**k
        return out

    def strip_units(self, d):
        return d

    def label(self):
        return "Z/%d" % self.n

    def to_json(self):
        return {"type": "Z/n", "n": self.n}


@dataclass(frozen=True)
class LocalNilpotentAlgebra:
    p: int
    generators: tuple  # of (name, exponent >= 2) pairs

    def __post_init__(self):
        if not _is_prime(self.p):
            raise InputError("characteristic must be prime")
        gens = tuple((str(n), int(e)) for n, e in self.generators)
        if any(e < 2 for _n, e in gens):
            raise InputError("nilpotency exponents must be >= 2")
        if len({n for n, _e in gens}) != len(gens):
            raise InputError("duplicate generator names")
        object.__setattr__(self, "generators", gens)

    @property
    def modulus(self):
        return self.p

    def monomials(self):
        """Exponent tuples of the monomial basis, lexicographic."""
        out = [()]
        for _name, e in self.generators:
            out = [m + (i,) for m in out for i in range(e)]
        return sorted(out)

    @property
    def dim(self):
        d = 1
        for _n, e in self.generators:
            d *= e
        return d

    def multiplication_matrix(self, name):
        """Matrix of multiplication by the generator on the monomial basis."""
        mons = self.monomials()
        idx = {m: i for i, m in enumerate(mons)}
        gi = [n for n, _e in self.generators].index(name)
        mat = zeros(len(mons), len(mons))
        for m in mons:
            bumped = list(m)
            bumped[gi] += 1
            if bumped[gi] < self.generators[gi][1]:
                mat[idx[tuple(bumped)]][idx[m]] = 1
        return mat

    def element_is_unit(self, x):
        """Ring elements are given as a constant (int), a generator name, or
        a coefficient vector over the monomial basis.  A nonzero constant
        term means unit; everything else is nilpotent (the ring is local)."""
        if isinstance(x, int):
            return x % self.p != 0
        if isinstance(x, str):
            if x not in [n for n, _e in self.generators]:
                raise InputError("unknown generator %r" % x)
            return False
        vec = list(x)
        if len(vec) != self.dim:
            raise InputError("element vector has the wrong length")
        const_index = self.monomials().index(tuple(0 for _ in self.generators))
        return vec[const_index] % self.p != 0

    def label(self):
        return "F%d[%s]/(%s)" % (
            self.p,
            ",".join(n for n, _e in self.generators),
            ",".join("%s^%d" % (n, e) for n, e in self.generators),
        )

    def to_json(self):
        return {
            "type": "local_nilpotent",
            "p": self.p,
            "generators": [[n, e] for n, e in self.generators],
        }


def ring_from_json(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise InputError("ring JSON needs a type")
    t = obj["type"]
    if t == "Z":
        if "at_prime" in obj and obj["at_prime"] is not None:
            return IntegersLocalized(at_prime=obj["at_prime"])
        return IntegersLocalized(inverted=frozenset(obj.get("inverted", ())))
    if t == "Z/n":
        return ModularIntegers(obj["n"])
    if t == "local_nilpotent":
        return LocalNilpotentAlgebra(obj["p"], tuple((n, e) for n, e in obj["generators"]))
    raise InputError("unknown ring type %r" % t)


# ---------------------------------------------------------------------------
# canonical forms


@dataclass(frozen=True)
class CanonicalModule:
    """Isomorphism-class data of a module: invariant factors, free rank and
    (for the symbolic localization calculus) divisible p-power-torsion parts
    recorded as (prime, multiplicity) pairs."""

    factors: tuple = ()
    rank: int = 0
    divisible: tuple = ()

    @property
    def is_zero(self):
        return not self.factors and self.rank == 0 and not self.divisible


def canonical_module(ring, factors, rank, divisible=()):
    stripped = []
    for d in factors:
        d2 = ring.strip_units(d)
        if d2 != 1:
            stripped.append(d2)
    div = tuple(sorted((q, m) for q, m in divisible if m > 0))
    return CanonicalModule(tuple(sorted(stripped)), rank, div)


# ---------------------------------------------------------------------------
# presented modules (integer flavours)


class PresentedModule:
    """coker of an integer matrix (rows = generators, columns = relations),
    over an integer-flavoured base ring."""

    __slots__ = ("ring", "ngens", "rel")

    def __init__(self, ring, ngens, rel):
        if isinstance(ring, LocalNilpotentAlgebra):
            raise InputError("use LnaModule over a local nilpotent algebra")
        rel = [list(map(int, row)) for row in rel]
        if rel and len(rel) != ngens:
            raise InputError("presentation must have one row per generator")
        if rel and len({len(r) for r in rel}) > 1:
            raise InputError("ragged presentation")
        self.ring = ring
        self.ngens = ngens
        self.rel = rel if rel else [[] for _ in range(ngens)]

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank, [[] for _ in range(rank)])

    @classmethod
    def cyclic(cls, ring, d):
        return cls(ring, 1, [[d]])

    @property
    def nrels(self):
        return len(self.rel[0]) if self.ngens and self.rel else 0

    def relation_columns(self):
        """Columns generating the relation lattice, modulus included."""
        cols = [[self.rel[i][j] for i in range(self.ngens)] for j in range(self.nrels)]
        m = self.ring.modulus
        if m:
            cols += [[m if i == j else 0 for i in range(self.ngens)] for j in range(self.ngens)]
        return cols

    def canonical(self):
        cols = self.relation_columns()
        if self.ngens == 0:
            return canonical_module(self.ring, (), 0)
        if not cols:
            return canonical_module(self.ring, (), self.ngens)
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(self.ngens)]
        d, _u, _v = smith_normal_form(mat)
        diag = [e for e in diagonal(d) if e != 0]
        return canonical_module(self.ring, diag, self.ngens - len(diag))

    @property
    def is_zero(self):
        return self.canonical().is_zero

    def direct_sum(self, other):
        assert self.ring == other.ring
        a = self.rel if self.nrels else [[] for _ in range(self.ngens)]
        b = other.rel if other.nrels else [[] for _ in range(other.ngens)]
        rel = block_diag([a, b]) if (self.ngens or other.ngens) else []
        return PresentedModule(self.ring, self.ngens + other.ngens, rel)

    def to_json(self):
        return [row[:] for row in self.rel]

    def __repr__(self):
        c = self.canonical()
        return "PresentedModule(%s, factors=%r, rank=%d)" % (
            self.ring.label(),
            c.factors,
            c.rank,
        )


# ---------------------------------------------------------------------------
# F_p linear algebra (local nilpotent algebra flavour)


def fp_reduce(mat, p):
    """Row reduce mod p; returns (rref, pivot column list)."""
    m = [[x % p for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c] % p != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] % p != 0:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def fp_kernel(mat, ncols, p):
    """Basis column vectors of the kernel mod p."""
    rref, pivots = fp_reduce(mat, p) if mat else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [0] * ncols
        v[fcol] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rref[r][fcol]) % p
        basis.append(v)
    return basis


def fp_solve(mat, b, p):
    """One solution x of mat x = b mod p, or None."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [mat[i][:] + [b[i]] for i in range(rows)]
    rref, pivots = fp_reduce(aug, p)
    for row in rref:
        if all(v % p == 0 for v in row[:-1]) and row[-1] % p != 0:
            return None
    x = [0] * cols
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
        x[pc] = rref[r][cols] % p
    return x


def fp_rank(mat, p):
    return len(fp_reduce(mat, p)[0]) if mat and mat[0] else 0


class LnaModule:
    """Finite dimensional F_p vector space with commuting nilpotent actions
    of the algebra generators."""

    __slots__ = ("ring", "dim", "actions")

    def __init__(self, ring, dim, actions):
        if not isinstance(ring, LocalNilpotentAlgebra):
            raise InputError("LnaModule wants a LocalNilpotentAlgebra")
        p = ring.p
        actions = {n: [[x % p for x in row] for row in m] for n, m in actions.items()}
        if set(actions) != {n for n, _e in ring.generators}:
            raise InputError("need one action per algebra generator")
        for name, e in ring.generators:
            a = actions[name]
            if len(a) != dim or any(len(r) != dim for r in a):
                raise InputError("action matrix shape mismatch")
            power = identity(dim)
            for _ in range(e):
                power = mat_mul(power, a)
            if any(x % p for row in power for x in row):
                raise InputError("action violates the nilpotency exponent of %s" % name)
        names = [n for n, _e in ring.generators]
        for i in range(len(names)):
            for j in range(i + 1, len(names)):
                ab = mat_mul(actions[names[i]], actions[names[j]])
                ba = mat_mul(actions[names[j]], actions[names[i]])
                if any((x - y) % p for ra, rb in zip(ab, ba) for x, y in zip(ra, rb)):
                    raise InputError("generator actions do not commute")
        self.ring = ring
        self.dim = dim
        self.actions = actions

    @classmethod
    def free(cls, ring, rank):
        mats = {n: ring.multiplication_matrix(n) for n, _e in ring.generators}
        d = ring.dim
        big = {
            n: block_diag([mats[n]] * rank) if rank else [[]] and []
            for n in mats
        }
        if rank == 0:
            big = {n: [] for n in mats}
        return cls(ring, d * rank, big)

    @classmethod
    def zero(cls, ring):
        return cls(ring, 0, {n: [] for n, _e in ring.generators})

    def canonical(self):
        return CanonicalModule((), self.dim, ())

    @property
    def is_zero(self):
        return self.dim == 0

    def direct_sum(self, other):
        assert self.ring == other.ring
        return LnaModule(
            self.ring,
            self.dim + other.dim,
            {n: block_diag([self.actions[n], other.actions[n]]) for n in self.actions},
        )

    def to_json(self):
        return {"dim": self.dim, "actions": {n: self.actions[n] for n in sorted(self.actions)}}

    def __repr__(self):
        return "LnaModule(dim=%d)" % self.dim


# ---------------------------------------------------------------------------
# cochain complexes


class ChainComplex:
    """Bounded cochain complex.  modules[k] sits in degree min_deg + k and
    differentials[k] maps it to modules[k+1] (matrix rows = target
    generators)."""

    __slots__ = ("ring", "min_deg", "modules", "differentials")

    def __init__(self, ring, min_deg, modules, differentials):
        if len(differentials) != max(len(modules) - 1, 0):
            raise InputError("need exactly len(modules) - 1 differentials")
        self.ring = ring
        self.min_deg = int(min_deg)
        self.modules = list(modules)
        self.differentials = [[list(map(int, row)) for row in d] for d in differentials]
        if isinstance(ring, LocalNilpotentAlgebra):
            self._validate_lna()
        else:
            self._validate_pid()

    # -- validation ---------------------------------------------------------

    def _validate_pid(self):
        for m in self.modules:
            if not isinstance(m, PresentedModule) or m.ring != self.ring:
                raise InputError("module/ring mismatch in complex")
        for k, d in enumerate(self.differentials):
            src, tgt = self.modules[k], self.modules[k + 1]
            if len(d) != tgt.ngens or (d and any(len(r) != src.ngens for r in d)):
                if not (tgt.ngens == 0 and not d) and not (src.ngens == 0):
                    raise InputError("differential shape mismatch at slot %d" % k)
            d = _shaped(d, tgt.ngens, src.ngens)
            self.differentials[k] = d
            # well-definedness: d carries relations into relations
            if src.ngens and tgt.ngens:
                for col in src.relation_columns():
                    img = [sum(d[i][j] * col[j] for j in range(src.ngens)) for i in range(tgt.ngens)]
                    if not _in_lattice(img, tgt.relation_columns()):
                        raise InputError("differential not well defined at slot %d" % k)
        for k in range(len(self.differentials) - 1):
            a = self.differentials[k]
            b = self.differentials[k + 1]
            src = self.modules[k]
            mid = self.modules[k + 1]
            far = self.modules[k + 2]
            if src.ngens == 0 or mid.ngens == 0 or far.ngens == 0:
                continue
            comp = mat_mul(b, a)
            for j in range(src.ngens):
                col = [comp[i][j] for i in range(far.ngens)]
                if not _in_lattice(col, far.relation_columns()):
                    raise InputError("d^2 != 0 between slots %d and %d" % (k, k + 2))

    def _validate_lna(self):
        p = self.ring.p
        for m in self.modules:
            if not isinstance(m, LnaModule) or m.ring != self.ring:
                raise InputError("module/ring mismatch in complex")
        for k, d in enumerate(self.differentials):
            src, tgt = self.modules[k], self.modules[k + 1]
            d = _shaped(d, tgt.dim, src.dim)
            self.differentials[k] = d
            for name in src.actions:
                left = mat_mul(d, src.actions[name])
                right = mat_mul(tgt.actions[name], d)
                if any((x - y) % p for ra, rb in zip(left, right) for x, y in zip(ra, rb)):
                    raise InputError("differential is not module-linear at slot %d" % k)
        for k in range(len(self.differentials) - 1):
            comp = mat_mul(self.differentials[k + 1], self.differentials[k])
            if any(x % p for row in comp for x in row):
                raise InputError("d^2 != 0 between slots %d and %d" % (k, k + 2))

    # -- structure ----------------------------------------------------------

    @property
    def max_deg(self):
        return self.min_deg + len(self.modules) - 1

    def degrees(self):
        return range(self.min_deg, self.max_deg + 1)

    def module(self, i):
        k = i - self.min_deg
        if 0 <= k < len(self.modules):
            return self.modules[k]
        if isinstance(self.ring, LocalNilpotentAlgebra):
            return LnaModule.zero(self.ring)
        return PresentedModule(self.ring, 0, [])

    def _gens(self, i):
        m = self.module(i)
        return m.dim if isinstance(m, LnaModule) else m.ngens

    def differential(self, i):
        k = i - self.min_deg
        if 0 <= k < len(self.differentials):
            return self.differentials[k]
        return _shaped([], self._gens(i + 1), self._gens(i))

    def shift(self, s):
        """Same complex moved so old degree i sits in degree i - s."""
        return ChainComplex(self.ring, self.min_deg - s, self.modules, self.differentials)

    def direct_sum(self, other):
        assert self.ring == other.ring
        lo = min(self.min_deg, other.min_deg)
        hi = max(self.max_deg, other.max_deg)
        mods = [self.module(i).direct_sum(other.module(i)) for i in range(lo, hi + 1)]
        diffs = []
        for i in range(lo, hi):
            # explicit shapes: a 0-row block would otherwise lose its width
            ra, ca = self._gens(i + 1), self._gens(i)
            rb, cb = other._gens(i + 1), other._gens(i)
            d = zeros(ra + rb, ca + cb)
            for r, row in enumerate(self.differential(i)):
                for c, v in enumerate(row):
                    d[r][c] = v
            for r, row in enumerate(other.differential(i)):
                for c, v in enumerate(row):
                    d[ra + r][ca + c] = v
            diffs.append(d)
        return ChainComplex(self.ring, lo, mods, diffs)

    # -- cohomology ---------------------------------------------------------

    def cohomology(self, i):
        if isinstance(self.ring, LocalNilpotentAlgebra):
            return self._cohomology_lna(i)
        return self._cohomology_pid(i)

    def cohomology_all(self):
        return {i: self.cohomology(i) for i in self.degrees()}

    def is_acyclic(self):
        return all(_canon(self.cohomology(i)).is_zero for i in self.degrees())

    def _cohomology_pid(self, i):
        g = self._gens(i)
        if g == 0:
            return canonical_module(self.ring, (), 0)
        d_i = self.differential(i)
        nxt = self.module(i + 1)
        if nxt.ngens == 0:
            k_gens = [[1 if r == j else 0 for r in range(g)] for j in range(g)]
        else:
            tgt_cols = nxt.relation_columns()
            big = hstack(d_i, [[-c[r] for c in tgt_cols] for r in range(nxt.ngens)])
            kern = kernel_basis(big, ncols=g + len(tgt_cols))
            k_gens = [v[:g] for v in kern]
        k_basis = lattice_basis(k_gens, g)
        d_prev = self.differential(i - 1)
        l_cols = [
            [d_prev[r][j] for r in range(g)] for j in range(self._gens(i - 1))
        ] + self.module(i).relation_columns()
        factors, rank = quotient_invariants(k_basis, l_cols)
        return canonical_module(self.ring, factors, rank)

    def _cohomology_lna(self, i):
        p = self.ring.p
        g = self._gens(i)
        if g == 0:
            return LnaModule.zero(self.ring)
        ker = fp_kernel(self.differential(i), g, p)
        d_prev = self.differential(i - 1)
        img = []
        for j in range(self._gens(i - 1)):
            img.append([d_prev[r][j] % p for r in range(g)])
        img_mat = [list(c) for c in img]
        # basis of the image inside the kernel, extended to a kernel basis
        img_basis = _fp_column_basis(img, p)
        full = list(img_basis)
        coset = []
        for v in ker:
            if _fp_in_span(full, v, p):
                continue
            full.append(v)
            coset.append(v)
        hdim = len(coset)
        if hdim == 0:
            return LnaModule.zero(self.ring)
        actions = {}
        for name in self.module(i).actions:
            act = self.module(i).actions[name]
            mat = zeros(hdim, hdim)
            for cidx, v in enumerate(coset):
                w = [sum(act[r][k] * v[k] for k in range(g)) % p for r in range(g)]
                coords = _fp_coords_in_quotient(img_basis, coset, w, p)
                for ridx in range(hdim):
                    mat[ridx][cidx] = coords[ridx]
            actions[name] = mat
        return LnaModule(self.ring, hdim, actions)

    # -- JSON ---------------------------------------------------------------

    def to_json(self):
        return {
            "ring": self.ring.to_json(),
            "degrees": [self.min_deg, self.max_deg],
            "modules": [m.to_json() for m in self.modules],
            "differentials": [
                [row[:] for row in d] for d in self.differentials
            ],
        }

    @classmethod
    def from_json(cls, obj):
        required = {"ring", "degrees", "modules", "differentials"}
        if not isinstance(obj, dict) or not required <= set(obj):
            raise InputError("complex JSON needs ring/degrees/modules/differentials")
        ring = ring_from_json(obj["ring"])
        lo, hi = obj["degrees"]
        raw_modules = obj["modules"]
        if len(raw_modules) != hi - lo + 1:
            raise InputError("degree range and module count disagree")
        if isinstance(ring, LocalNilpotentAlgebra):
            modules = [
                LnaModule(ring, m["dim"], {n: mat for n, mat in m["actions"].items()})
                for m in raw_modules
            ]
        else:
            modules = []
            for m in raw_modules:
                rows = [list(map(int, r)) for r in m]
                modules.append(PresentedModule(ring, len(rows), rows))
        return cls(ring, lo, modules, obj["differentials"])

    def __repr__(self):
        return "ChainComplex(%s, degrees %d..%d)" % (
            self.ring.label(),
            self.min_deg,
            self.max_deg,
        )


def _canon(h):
    return h.canonical() if isinstance(h, LnaModule) else h


def _shaped(mat, rows, cols):
    if not mat or rows == 0 or cols == 0:
        return [[0] * cols for _ in range(rows)]
    assert len(mat) == rows and all(len(r) == cols for r in mat)
    return [list(r) for r in mat]


def _in_lattice(vec, cols):
    if all(x == 0 for x in vec):
        return True
    if not cols:
        return False
    mat = [[c[i] for c in cols] for i in range(len(vec))]
    return solve_int(mat, [vec]) is not None


def _fp_column_basis(cols, p):
    basis = []
    for c in cols:
        if not _fp_in_span(basis, c, p):
            basis.append([x % p for x in c])
    return basis


def _fp_in_span(basis, v, p):
    if all(x % p == 0 for x in v):
        return True
    if not basis:
        return False
    mat = [[b[i] for b in basis] for i in range(len(v))]
    return fp_solve(mat, v, p) is not None


def _fp_coords_in_quotient(img_basis, coset, w, p):
    """Coordinates of w on the coset basis modulo the image span."""
    cols = coset + img_basis
    if not cols:
        assert all(x % p == 0 for x in w)
        return []
    mat = [[c[i] for c in cols] for i in range(len(w))]
    sol = fp_solve(mat, w, p)
    assert sol is not None, "vector left the kernel subquotient"
    return sol[: len(coset)]


# ---------------------------------------------------------------------------
# zero / free complex helpers


def zero_complex(ring, degree=0):
    if isinstance(ring, LocalNilpotentAlgebra):
        return ChainComplex(ring, degree, [LnaModule.zero(ring)], [])
    return ChainComplex(ring, degree, [PresentedModule(ring, 0, [])], [])


def module_complex(module, degree=0):
    """The module placed in a single degree."""
    return ChainComplex(module.ring, degree, [module], [])


def cone(f_blocks, src, tgt):
    """Total complex of a chain map f: src -> tgt, i.e. degree i part
    src^i ⊕ tgt^{i-1} with d(c, e) = (dc, f(c) - de).

    f_blocks maps degree i to the matrix of f in that degree (missing
    degrees mean zero)."""
    assert src.ring == tgt.ring
    ring = src.ring
    lo = min(src.min_deg, tgt.min_deg + 1)
    hi = max(src.max_deg, tgt.max_deg + 1)
    is_lna = isinstance(ring, LocalNilpotentAlgebra)

    def gens(m):
        return m.dim if is_lna else m.ngens

    modules = []
    diffs = []
    for i in range(lo, hi + 1):
        modules.append(src.module(i).direct_sum(tgt.module(i - 1)))
    for i in range(lo, hi):
        sc, tc = src.module(i), tgt.module(i - 1)
        sn, tn = src.module(i + 1), tgt.module(i)
        rows = gens(sn) + gens(tn)
        cols = gens(sc) + gens(tc)
        d = zeros(rows, cols)
        for r, row in enumerate(src.differential(i)):
            for c, v in enumerate(row):
                d[r][c] = v
        fmat = f_blocks.get(i, None)
        if fmat is None:
            fmat = zeros(gens(tn), gens(sc))
        for r in range(gens(tn)):
            for c in range(gens(sc)):
                d[gens(sn) + r][c] = fmat[r][c]
        for r, row in enumerate(tgt.differential(i - 1)):
            for c, v in enumerate(row):
                d[gens(sn) + r][gens(sc) + c] = -v
        diffs.append(d)
    return ChainComplex(ring, lo, modules, diffs)


def identity_blocks(cx):
    is_lna = isinstance(cx.ring, LocalNilpotentAlgebra)

    def gens(m):
        return m.dim if is_lna else m.ngens

    return {i: identity(gens(cx.module(i))) for i in cx.degrees()}


# ---------------------------------------------------------------------------
# localization


def localize(cx, p):
    """Localize a complex at a prime.

    * IntegersLocalized: switch the ring tag to 'every prime except p is a
      unit'; matrices are unchanged, canonicalization does the stripping.
    * ModularIntegers: pass to Z/p^k, the p-part of the modulus.
    * LocalNilpotentAlgebra: the ring is local, localizing at the unique
      prime changes nothing (p must be the token \"m\").
    """
    ring = cx.ring
    if isinstance(ring, LocalNilpotentAlgebra):
        if p != "m":
            raise InputError("the only prime here is the maximal ideal token 'm'")
        return cx
    if isinstance(ring, ModularIntegers):
        m = ring.residue_modulus(p)
        new_ring = ModularIntegers(m) if m > 1 else None
        assert new_ring is not None  # p^k >= 2 whenever p | n
        mods = [PresentedModule(new_ring, mm.ngens, mm.rel) for mm in cx.modules]
        return ChainComplex(new_ring, cx.min_deg, mods, cx.differentials)
    if isinstance(ring, IntegersLocalized):
        if p == 0:
            raise InputError("use derived_tensor_residue for the generic point")
        new_ring = ring.localized_at(p)
        mods = [PresentedModule(new_ring, mm.ngens, mm.rel) for mm in cx.modules]
        return ChainComplex(new_ring, cx.min_deg, mods, cx.differentials)
    raise InputError("unknown ring")


def localize_by_element(cx, x):
    """C[1/x] for Z/n: the coprime-to-x part of the modulus survives."""
    ring = cx.ring
    if not isinstance(ring, ModularIntegers):
        raise InputError("element localization is a Z/n construction here")
    n2 = ring.coprime_part(x)
    if n2 == 1:
        return zero_complex(ring, cx.min_deg)
    extra = ring.n // _coprime_cofactor(ring.n, n2)
    mods = []
    for m in cx.modules:
        rel = [row[:] for row in m.rel]
        # kill the part of the modulus that x inverts: add n2 * e_i relations
        for i in range(m.ngens):
            for row_idx in range(m.ngens):
                rel[row_idx].append(n2 if row_idx == i else 0)
        mods.append(PresentedModule(ring, m.ngens, rel))
    return ChainComplex(ring, cx.min_deg, mods, cx.differentials)


def _coprime_cofactor(n, n2):
    return n // n2 if n % n2 == 0 else 1


# ---------------------------------------------------------------------------
# stable Koszul complexes


class SymbolicComplex:
    """Cohomology-level stand-in for complexes whose terms live over ever
    larger localizations of the integers.  Stores one CanonicalModule per
    degree (with divisible parts); supports further koszul_stable rounds."""

    __slots__ = ("ring", "h")

    def __init__(self, ring, h):
        self.ring = ring
        self.h = dict(h)

    def degrees(self):
        return sorted(self.h)

    def cohomology(self, i):
        return self.h.get(i, CanonicalModule())

    def cohomology_all(self):
        return {i: self.cohomology(i) for i in self.degrees()}

    def is_acyclic(self):
        return all(v.is_zero for v in self.h.values())

    def __repr__(self):
        return "SymbolicComplex(%s, %r)" % (self.ring.label(), self.h)


def koszul_stable(x, cx):
    """Tensor the complex with R -> R[1/x] (R in degree 0, R[1/x] in
    degree 1) and totalize.

    Over Z/n and over a local nilpotent algebra, R[1/x] is again a finitely
    presented quotient and the result is an honest complex.  Over localized
    integers R[1/x] is not finitely presented and the result is returned as
    a SymbolicComplex carrying cohomology only; see the long exact sequence
    bookkeeping inline.
    """
    ring = cx.ring
    if isinstance(ring, ModularIntegers):
        if not isinstance(x, int):
            raise InputError("elements of Z/n are integers")
        loc = localize_by_element(cx, x)
        blocks = {}
        for i in cx.degrees():
            g = cx.module(i).ngens
            blocks[i] = identity(g)
        # pad the localized side so the cone helper sees matching degrees
        return cone(blocks, cx, loc)
    if isinstance(ring, LocalNilpotentAlgebra):
        if ring.element_is_unit(x):
            return cone(identity_blocks(cx), cx, cx)
        return cone({}, cx, zero_complex(ring, cx.min_deg))
    if isinstance(ring, IntegersLocalized):
        return _koszul_symbolic(x, cx)
    raise InputError("unknown ring")


def _koszul_symbolic(x, cx):
    ring = cx.ring
    if not isinstance(x, int):
        raise InputError("elements here are integers")
    if isinstance(cx, SymbolicComplex):
        h = dict(cx.h)
        degs = cx.degrees()
    else:
        h = {i: cx.cohomology(i) for i in cx.degrees()}
        degs = list(cx.degrees())
    if x == 0:
        # R[1/0] = 0, the tensor changes nothing
        return SymbolicComplex(ring, h)
    if ring.is_unit(x):
        return SymbolicComplex(ring, {i: CanonicalModule() for i in degs})
    live = sorted(q for q in factorize(x) if not ring.is_unit_prime(q))
    out = {}
    lo = min(degs) if degs else 0
    hi = max(degs) if degs else 0
    for i in range(lo, hi + 2):
        here = h.get(i, CanonicalModule())
        below = h.get(i - 1, CanonicalModule())
        # kernel of H^i -> H^i[1/x]: the x-primary part (finite and divisible)
        factors = []
        for d in here.factors:
            part = 1
            for q in live:
                while d % q == 0:
                    part *= q
                    d //= q
            if part != 1:
                factors.append(part)
        divis = {q: m for q, m in here.divisible if q in live}
        # cokernel of H^{i-1} -> H^{i-1}[1/x]: (R[1/x]/R)^rank, one divisible
        # q-power-torsion summand per live prime per free generator
        for q in live:
            divis[q] = divis.get(q, 0) + below.rank
        out[i] = canonical_module(ring, factors, 0, divis.items())
    return SymbolicComplex(ring, {i: m for i, m in out.items()})


# ---------------------------------------------------------------------------
# residue fields


@dataclass(frozen=True)
class ResidueOutcome:
    """Dimensions of the cohomology of C ⊗^L k(p)."""

    prime: object  # 0 for the generic point, else the prime
    dims: tuple  # ((degree, dim), ...)

    @property
    def is_nonzero(self):
        return any(d for _i, d in self.dims)


def derived_tensor_residue(cx, p):
    """Derived tensor with the residue field at p over an integer flavour.

    For p = 0 this is C ⊗ Q, so the dimensions are the free ranks of the
    cohomology.  For a prime it is the totalization of C with the two-term
    flat resolution (R --p--> R) of R/p, computed as an honest complex.
    """
    ring = cx.ring
    if not isinstance(ring, IntegersLocalized):
        raise InputError("residue calculus is set up over the integer flavours")
    if p == 0:
        dims = tuple((i, cx.cohomology(i).rank) for i in cx.degrees())
        return ResidueOutcome(0, dims)
    if not _is_prime(p):
        raise InputError("p must be zero or a prime")
    if ring.is_unit_prime(p):
        return ResidueOutcome(p, tuple((i, 0) for i in cx.degrees()))
    lo = cx.min_deg - 1
    hi = cx.max_deg
    modules = []
    diffs = []
    for i in range(lo, hi + 1):
        modules.append(cx.module(i + 1).direct_sum(cx.module(i)))
    for i in range(lo, hi):
        up_src = cx.module(i + 1)
        low_src = cx.module(i)
        up_tgt = cx.module(i + 2)
        low_tgt = cx.module(i + 1)
        rows = up_tgt.ngens + low_tgt.ngens
        cols = up_src.ngens + low_src.ngens
        d = zeros(rows, cols)
        for r, row in enumerate(cx.differential(i + 1)):
            for c, v in enumerate(row):
                d[r][c] = v
        sign = -1 if (i + 1) % 2 else 1
        for r in range(low_tgt.ngens):
            d[up_tgt.ngens + r][r] = sign * p
        for r, row in enumerate(cx.differential(i)):
            for c, v in enumerate(row):
                d[up_tgt.ngens + r][up_src.ngens + c] = v
        diffs.append(d)
    total = ChainComplex(ring, lo, modules, diffs)
    dims = []
    for i in total.degrees():
        h = total.cohomology(i)
        assert h.rank == 0, "residue cohomology must be torsion"
        for d in h.factors:
            assert set(factorize(d)) == {p}, "stray torsion in residue cohomology"
        dims.append((i, len(h.factors)))
    return ResidueOutcome(p, tuple(dims))


# ---------------------------------------------------------------------------
# derived Hom over Z/n


@dataclass(frozen=True)
class HomExtResult:
    window: tuple
    groups: tuple  # ((degree, CanonicalModule), ...)
    certified: bool
    note: str = ""

    @property
    def all_vanish(self):
        return all(g.is_zero for _i, g in self.groups)


def hom_complex_h0(s_cx, t_cx, window=(0, 0), gens_bound=HOM_GENS_MAX):
    """Hom groups [S, T[k]] in the derived category of Z/n for k in the
    window, via a truncated degreewise-free resolution of S.

    The modulus splits into prime-power blocks; each block is resolved and
    the block answers are summed.  The truncation depth is chosen from the
    window, so the answer is certified exact unless the generator-count
    bound is hit, in which case the result says so instead of guessing.
    """
    ring = s_cx.ring
    if not isinstance(ring, ModularIntegers) or t_cx.ring != ring:
        raise InputError("derived Hom is set up over a shared Z/n")
    lo_k, hi_k = window
    if lo_k > hi_k:
        raise InputError("empty window")
    totals = {k: CanonicalModule() for k in range(lo_k, hi_k + 1)}
    try:
        for p in ring.prime_divisors():
            sp = localize(s_cx, p)
            tp = localize(t_cx, p)
            block = _hom_block(sp, tp, lo_k, hi_k, gens_bound)
            for k, cm in block.items():
                old = totals[k]
                totals[k] = CanonicalModule(
                    tuple(sorted(old.factors + cm.factors)), old.rank + cm.rank, ()
                )
    except ResourceLimitError as exc:
        return HomExtResult(
            (lo_k, hi_k), tuple(sorted(totals.items())), False, "window insufficient: %s" % exc
        )
    return HomExtResult((lo_k, hi_k), tuple(sorted(totals.items())), True)


def _hom_block(s_cx, t_cx, lo_k, hi_k, gens_bound):
    ring = s_cx.ring
    cutoff = t_cx.min_deg - hi_k - 2
    res = _free_resolution(s_cx, cutoff, gens_bound)
    # res: degree -> (rank, d to degree+1, f to S) ; frees only
    hom_lo, hom_hi = lo_k - 1, hi_k + 1
    gens_layout = {}
    hom_rels = {}
    for k in range(hom_lo, hom_hi + 1):
        layout = []
        for j in sorted(res):
            rank = res[j][0]
            tm = t_cx.module(j + k)
            if rank and tm.ngens:
                layout.append((j, rank, tm))
        gens_layout[k] = layout
        hom_rels[k] = block_diag(
            [_replicate_rel(tm, rank) for j, rank, tm in layout]
        ) if layout else []
    mods = {}
    for k in range(hom_lo, hom_hi + 1):
        total_gens = sum(rank * tm.ngens for _j, rank, tm in gens_layout[k])
        if total_gens > gens_bound:
            raise ResourceLimitError("hom module too large", "hom_gens", gens_bound)
        mods[k] = PresentedModule(ring, total_gens, hom_rels[k] or [[] for _ in range(total_gens)])
    diffs = []
    for k in range(hom_lo, hom_hi):
        diffs.append(_hom_differential(gens_layout[k], gens_layout[k + 1], t_cx, res, k))
    hom_cx = ChainComplex(ring, hom_lo, [mods[k] for k in range(hom_lo, hom_hi + 1)], diffs)
    return {k: hom_cx.cohomology(k) for k in range(lo_k, hi_k + 1)}


def _replicate_rel(tm, rank):
    base = tm.rel if tm.nrels else [[] for _ in range(tm.ngens)]
    return block_diag([base] * rank) if rank else []


def _offsets(layout):
    out = {}
    pos = 0
    for j, rank, tm in layout:
        out[j] = (pos, rank, tm)
        pos += rank * tm.ngens
    return out, pos


def _hom_differential(src_layout, tgt_layout, t_cx, res, k):
    """(δφ)_j = d_T ∘ φ_j − (−1)^k φ_{j+1} ∘ d_P."""
    src_off, src_total = _offsets(src_layout)
    tgt_off, tgt_total = _offsets(tgt_layout)
    d = zeros(tgt_total, src_total)
    sign = -1 if k % 2 else 1
    for j, (tpos, trank, t_tgt) in tgt_off.items():
        # d_T ∘ φ_j : uses source block j (φ_j : P^j -> T^{j+k})
        if j in src_off:
            spos, srank, t_src = src_off[j]
            assert srank == trank
            d_t = t_cx.differential(j + k)
            for b in range(trank):
                for t_out in range(t_tgt.ngens):
                    for t_in in range(t_src.ngens):
                        v = d_t[t_out][t_in]
                        if v:
                            d[tpos + b * t_tgt.ngens + t_out][spos + b * t_src.ngens + t_in] += v
        # − (−1)^k φ_{j+1} ∘ d_P : uses source block j+1
        if j + 1 in src_off and j in res:
            spos, srank, t_src = src_off[j + 1]
            d_p = res[j][1]  # rank(P^{j+1}) x rank(P^j)
            assert t_src.ngens == t_tgt.ngens
            for b_out in range(trank):
                for b_in in range(srank):
                    v = d_p[b_in][b_out] if d_p else 0
                    if v:
                        for t in range(t_tgt.ngens):
                            d[tpos + b_out * t_tgt.ngens + t][
                                spos + b_in * t_src.ngens + t
                            ] += -sign * v
    return d


def _free_resolution(s_cx, cutoff, gens_bound):
    """Degreewise-free complex P with a quasi-isomorphism onto S, built top
    down: P^i covers the pullback of (S^i --d--> S^{i+1} <--f-- Z^{i+1}(P)).
    Returns {degree: (rank, d_to_next (rank_{i+1} x rank_i), f_to_S)} for
    degrees cutoff..max; cohomology is trustworthy above the cutoff."""
    ring = s_cx.ring
    n = ring.modulus
    rank = {}
    dmat = {}
    fmat = {}
    top = s_cx.max_deg
    for i in range(top, cutoff - 1, -1):
        sg = s_cx.module(i).ngens
        r_up = rank.get(i + 1, 0)
        r_upup = rank.get(i + 2, 0)
        # kernel of (s, y) -> (d_S s - f y, d_P y) inside S^i ⊕ P^{i+1}
        up_gens = s_cx.module(i + 1).ngens
        rows1 = up_gens
        amb = sg + r_up
        m1 = zeros(rows1, amb)
        for r, row in enumerate(s_cx.differential(i)):
            for c, v in enumerate(row):
                m1[r][c] = v
        f_up = fmat.get(i + 1)
        for r in range(up_gens):
            for c in range(r_up):
                m1[r][sg + c] -= f_up[r][c] if f_up else 0
        m2 = zeros(r_upup, amb)
        d_up = dmat.get(i + 1)
        for r in range(r_upup):
            for c in range(r_up):
                m2[r][sg + c] = d_up[r][c] if d_up else 0
        phi = m1 + m2
        # module-level kernel: image must land in rel(S^{i+1}) ⊕ 0 (P free,
        # so its only relation lattice is n * I)
        tgt_rel_cols = s_cx.module(i + 1).relation_columns()
        tcols = [c + [0] * r_upup for c in tgt_rel_cols]
        if n:
            for j in range(r_upup):
                tcols.append([0] * up_gens + [n if t == j else 0 for t in range(r_upup)])
        big = hstack(phi, [[-c[r] for c in tcols] for r in range(up_gens + r_upup)]) if tcols else phi
        kern = kernel_basis(big, ncols=amb + len(tcols))
        k_gens = [v[:amb] for v in kern]
        k_basis = lattice_basis(k_gens, amb)
        # relations of the ambient module: rel(S^i) ⊕ n*I on the P part
        src_rel = [c + [0] * r_up for c in s_cx.module(i).relation_columns()]
        if n:
            for j in range(r_up):
                src_rel.append([0] * sg + [n if t == j else 0 for t in range(r_up)])
        gens_mat, invs = _minimal_generators(k_basis, src_rel, amb)
        r_i = len(invs)
        if r_i > gens_bound:
            raise ResourceLimitError("resolution rank too large", "hom_gens", gens_bound)
        rank[i] = r_i
        fmat[i] = [[gens_mat[r][c] for c in range(r_i)] for r in range(sg)]
        dmat[i] = [[gens_mat[sg + r][c] for c in range(r_i)] for r in range(r_up)]
    # repackage: for each degree i store (rank_i, d: P^i -> P^{i+1}, f: P^i -> S^i)
    final = {}
    for i in range(cutoff, top + 1):
        final[i] = (rank.get(i, 0), dmat.get(i, []), fmat.get(i, []))
    return final


def _minimal_generators(k_basis, l_cols, amb):
    """Minimal generators of the quotient lattice K/L as columns in the
    ambient coordinates, dropping unit invariant factors."""
    if not k_basis:
        return [[ ] for _ in range(amb)], []
    kb = transpose(k_basis)  # amb x k
    coords = solve_int(kb, l_cols) if l_cols else []
    assert coords is not None, "relations escaped the kernel lattice"
    k = len(k_basis)
    x = [[coords[j][i] for j in range(len(coords))] for i in range(k)] if coords else zeros(k, 0)
    if not coords:
        gens = kb
        return gens, [0] * k
    d, u, _v = smith_normal_form(x)
    uinv = smith.inverse_unimodular(u)
    diag = diagonal(d)
    keep = [j for j in range(k) if j >= len(diag) or diag[j] != 1]
    new_gens = mat_mul(kb, uinv)  # columns = new generators
    gens = [[new_gens[r][j] for j in keep] for r in range(amb)]
    invs = [diag[j] if j < len(diag) else 0 for j in keep]
    return gens, invs
