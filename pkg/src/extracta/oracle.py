"""Ground-truth extraction by brute force over explicit decompositions.

Only ideal classes whose primary decompositions are easy to write down are
handled: monomial ideals, radical ideals of finitely many rational points,
principal ideals with a supplied factorization, and decompositions given
by the user (checked by re-intersecting).
"""

from dataclasses import dataclass
from functools import reduce

from .errors import DecompositionError, RefusedError
from .orders import named_order
from .poly import QQ, Ideal
from .standard_basis import (
    MonomialIdeal,
    _divides,
    dim_ideal,
    groebner_basis,
    ideal_contains,
    ideal_intersection,
    ideal_sum_is_whole_ring,
    ideals_equal,
    reduce_full,
)

PROVENANCES = ("monomial-split", "point", "factored-principal", "user-supplied")


@dataclass(frozen=True)
class PrimaryDecomposition:
    ideal: Ideal
    components: tuple
    provenance: str
    minimal: bool = False
    radicals: tuple = None

    @property
    def ring(self):
        return self.ideal.ring

    def subset(self, indices):
        """Decomposition of the intersection of the chosen components."""
        comps = tuple(self.components[i] for i in indices)
        rads = None if self.radicals is None else tuple(self.radicals[i] for i in indices)
        return PrimaryDecomposition(
            intersect_all(self.ring, comps), comps, self.provenance, self.minimal, rads
        )

    def union(self, other):
        """A (generally non-minimal) decomposition of the intersection."""
        rads = None
        if self.radicals is not None and other.radicals is not None:
            rads = self.radicals + other.radicals
        prov = self.provenance if self.provenance == other.provenance else "user-supplied"
        return PrimaryDecomposition(
            ideal_intersection(self.ideal, other.ideal),
            self.components + other.components,
            prov,
            False,
            rads,
        )


@dataclass(frozen=True)
class RationalPointSet:
    ring: object
    points: tuple

    def __post_init__(self):
        pts = tuple(tuple(QQ(c) for c in p) for p in self.points)
        for p in pts:
            if len(p) != self.ring.nvars:
                raise ValueError(f"point {p} has the wrong number of coordinates")
        if len(set(pts)) != len(pts):
            raise ValueError("points must be distinct")
        object.__setattr__(self, "points", pts)


def intersect_all(ring, ideals):
    ideals = list(ideals)
    if not ideals:
        return Ideal(ring, (ring.one(),))
    return reduce(ideal_intersection, ideals)


# monomial ideals


def _minimal(gens):
    return MonomialIdeal(None, tuple(gens)).min_gens


def _mono_contains(big, small):
    return all(any(_divides(g, s) for g in big) for s in small)


def _mono_intersection(a, b):
    return _minimal(tuple(map(max, x, y)) for x in a for y in b)


def _support(gens):
    return frozenset(i for g in gens for i, e in enumerate(g) if e)


def _irreducible_components(gens):
    gens = _minimal(gens)
    if any(not any(g) for g in gens):
        return []
    for g in gens:
        support = [i for i, e in enumerate(g) if e]
        if len(support) > 1:
            i = support[0]
            pure = tuple(g[i] if k == i else 0 for k in range(len(g)))
            rest = tuple(0 if k == i else e for k, e in enumerate(g))
            return _irreducible_components(gens + (pure,)) + _irreducible_components(
                gens + (rest,)
            )
    return [gens]


def monomial_primary_decomposition(M):
    """Minimal primary decomposition of a monomial ideal by splitting
    generators into coprime parts; leaves are irreducible."""
    ring = M.ring
    ideal = M.to_ideal()
    if M.is_zero():
        zero = Ideal(ring, ())
        return PrimaryDecomposition(ideal, (zero,), "monomial-split", True, (zero,))
    leaves = []
    for comp in _irreducible_components(M.min_gens):
        if comp not in leaves:
            leaves.append(comp)
    leaves = [
        c for c in leaves if not any(d != c and _mono_contains(c, d) for d in leaves)
    ]
    groups = {}
    for c in leaves:
        s = _support(c)
        groups[s] = _mono_intersection(groups[s], c) if s in groups else c
    comps = list(groups.items())
    changed = True
    while changed:
        changed = False
        for k, (s, c) in enumerate(comps):
            others = [d for j, (_, d) in enumerate(comps) if j != k]
            if others and _mono_contains(c, reduce(_mono_intersection, others)):
                del comps[k]
                changed = True
                break
    components, radicals = [], []
    for s, c in sorted(comps, key=lambda sc: (len(sc[0]), sorted(sc[0]), sc[1])):
        components.append(MonomialIdeal(ring, c).to_ideal())
        radicals.append(Ideal(ring, tuple(ring.gens()[i] for i in sorted(s))))
    return PrimaryDecomposition(ideal, tuple(components), "monomial-split", True, tuple(radicals))


def principal_decomposition(factors):
    """Decomposition of <prod p_i^e_i> from a caller-certified factorization
    into pairwise non-associate irreducibles."""
    factors = [(p, int(e)) for p, e in factors]
    if not factors:
        raise DecompositionError("empty factor list")
    ring = factors[0][0].ring
    for p, e in factors:
        if p.ring != ring:
            raise DecompositionError("factors live in different rings")
        if p.is_constant():
            raise DecompositionError(f"factor {p} is a constant")
        if e < 1:
            raise DecompositionError("multiplicities must be positive")
    principal = [Ideal(ring, (p,)) for p, _ in factors]
    for i in range(len(principal)):
        for j in range(i):
            if ideals_equal(principal[i], principal[j]):
                raise DecompositionError(
                    f"factors {factors[j][0]} and {factors[i][0]} are associate"
                )
    f = ring.one()
    for p, e in factors:
        f = f * p ** e
    ideal = Ideal(ring, (f,))
    comps = tuple(Ideal(ring, (p ** e,)) for p, e in factors)
    if not ideals_equal(intersect_all(ring, comps), ideal):
        raise DecompositionError("intersection of the factor powers differs from the product")
    return PrimaryDecomposition(ideal, comps, "factored-principal", True, tuple(principal))


def maximal_ideal(ring, point):
    return Ideal(
        ring, tuple(x - QQ(a) for x, a in zip(ring.gens(), point))
    )


def point_ideal(P):
    """Vanishing ideal of a rational point set and its decomposition into
    maximal ideals."""
    if not P.points:
        raise DecompositionError("empty point set")
    ring = P.ring
    comps = tuple(maximal_ideal(ring, p) for p in P.points)
    ideal = intersect_all(ring, comps)
    return ideal, PrimaryDecomposition(ideal, comps, "point", True, comps)


def user_decomposition(ideal, components, radicals=None, provenance="user-supplied"):
    """Wrap supplied components after checking they re-intersect to `ideal`.
    Primariness is trusted.  Minimality is checked when radicals are given."""
    if provenance not in PROVENANCES:
        raise DecompositionError(f"unknown provenance {provenance!r}")
    components = tuple(components)
    if not ideals_equal(intersect_all(ideal.ring, components), ideal):
        raise DecompositionError("components do not intersect to the ideal")
    minimal = False
    if radicals is not None:
        radicals = tuple(radicals)
        if len(radicals) != len(components):
            raise DecompositionError("one radical per component is required")
        minimal = is_minimal(components, radicals)
    return PrimaryDecomposition(ideal, components, provenance, minimal, radicals)


def is_minimal(components, radicals):
    """Distinct radicals and no component containing the intersection of the
    others."""
    for i in range(len(radicals)):
        for j in range(i):
            if ideals_equal(radicals[i], radicals[j]):
                return False
    if len(components) > 1:
        ring = components[0].ring
        for i, q in enumerate(components):
            others = intersect_all(ring, components[:i] + components[i + 1 :])
            if ideal_contains(q, others):
                return False
    return True


def decompose(ideal):
    """Decomposition for ideals whose class is recognizable from generators
    alone (currently: monomial ideals)."""
    if ideal.is_monomial():
        return monomial_primary_decomposition(MonomialIdeal.from_ideal(ideal))
    raise DecompositionError("no automatic decomposition for a non-monomial ideal")


# extraction and contraction by definition


def kept_indices(D, J):
    return [i for i, q in enumerate(D.components) if not ideal_sum_is_whole_ring(q, J)]


def beta_decomposition(D, J):
    """The kept components as a decomposition of the extraction."""
    return D.subset(kept_indices(D, J))


def beta_oracle(D, J):
    """Intersection of the components Q with Q + J a proper ideal."""
    return beta_decomposition(D, J).ideal


def _local_ideal(o):
    ring = o.ring
    gens = ring.gens()
    return Ideal(ring, tuple(gens[i] for i in o.local_vars()))


def contract_oracle(D, o):
    """Contraction of the extension of D's ideal under a control order."""
    if not o.is_control:
        raise RefusedError("contraction by component filtering needs a control order")
    return beta_oracle(D, _local_ideal(o))


def zero_dim_contract_oracle(P, o):
    """Contraction of a radical point ideal under any semigroup order: keep
    the points whose local coordinates all vanish."""
    local = o.local_vars()
    kept = [p for p in P.points if all(p[i] == 0 for i in local)]
    ring = P.ring
    if not kept:
        return Ideal(ring, (ring.one(),))
    return intersect_all(ring, [maximal_ideal(ring, p) for p in kept])


def dim_oracle(D):
    return max((dim_ideal(q) for q in D.components), default=-1)


def radical_of_decomposition(D):
    """Decomposition of the radical into the minimal primes among the
    component radicals."""
    if D.radicals is None:
        raise DecompositionError(
            f"radicals are unknown for a {D.provenance} decomposition without annotations"
        )
    primes = []
    for p in D.radicals:
        if not any(ideals_equal(p, q) for q in primes):
            primes.append(p)
    minimal = [
        p
        for p in primes
        if not any(q is not p and ideal_contains(p, q) for q in primes)
    ]
    ring = D.ring
    return PrimaryDecomposition(
        intersect_all(ring, minimal), tuple(minimal), D.provenance, True, tuple(minimal)
    )


def in_ideal(f, gb, ring):
    """Membership given a reduced degrevlex Gröbner basis."""
    return reduce_full(f, gb, named_order(ring, "degrevlex")).is_zero()


def is_unit_ideal(ideal):
    gb = groebner_basis(ideal)
    return len(gb) == 1 and gb[0].is_constant()
