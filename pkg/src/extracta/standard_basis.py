"""Normal forms and standard bases for arbitrary semigroup orders.

Global orders use ordinary division and Buchberger's algorithm.  Other
orders use Mora's ecart-driven weak normal form, which may add the partial
remainder to its divisor set and therefore multiplies the input by a unit
``1 + g`` with ``LT(g) < 1``.  That unit is returned alongside the
quotients so callers can check ``unit*f == sum(q_i*G_i) + r`` exactly.
"""

import itertools
import threading
from dataclasses import dataclass, field
from operator import add, le, sub

from .errors import OrderError, RefusedError, RingMismatchError
from .orders import elimination_order, named_order, validate_matrix
from .poly import QQ, Ideal, Polynomial, Ring, change_ring

ONE = QQ(1)


class CertificateLog:
    """When enabled, every weak normal form is computed with its unit and
    quotients and the identity ``unit*f - sum(q*G) - r == 0`` is asserted."""

    def __init__(self):
        self.enabled = False
        self.checked = 0
        self._lock = threading.Lock()

    def record(self):
        with self._lock:
            self.checked += 1


certificates = CertificateLog()


def _lt(terms, key):
    return max(terms, key=key)


def _divides(a, b):
    return all(map(le, a, b))


def _axpy(h, c, m, g):
    """h -= c * x^m * g, in place."""
    for e, v in g.items():
        e2 = tuple(map(add, e, m)) if any(m) else e
        nv = h.get(e2, 0) - c * v
        if nv:
            h[e2] = nv
        else:
            h.pop(e2, None)


def _deg(terms):
    return max(sum(e) for e in terms)


def leading_term(f, o):
    """(exponent, coefficient) of the maximal term of nonzero `f`."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no leading term")
    e = _lt(f.terms, o.key)
    return e, f.terms[e]


def leading_monomial(f, o):
    return leading_term(f, o)[0]


def monic(f, o):
    if f.is_zero():
        return f
    _, c = leading_term(f, o)
    return f if c == 1 else f.scale(1 / c)


def ecart(f, o):
    e, _ = leading_term(f, o)
    return f.degree() - sum(e)


@dataclass(frozen=True)
class WeakNF:
    remainder: Polynomial
    unit: Polynomial
    quotients: tuple

    def check(self, f, G):
        """The exact certificate polynomial; zero when the identity holds."""
        total = self.unit * f - self.remainder
        for q, g in zip(self.quotients, G):
            total = total - q * g
        return total


class StepBudgetExceeded(Exception):
    """A weak normal form ran past its `max_steps`."""


def mora_weak_nf(f, G, o, track=None, max_steps=None):
    """Weak normal form of `f` with respect to `G` under order `o`.

    With ``track`` (default: on iff certificates are enabled) the unit and
    quotients are computed; otherwise only the remainder is meaningful and
    the unit/quotients are returned as None.  With `max_steps`, raises
    StepBudgetExceeded after that many reduction steps.
    """
    G = list(G)
    ring = f.ring
    for g in G:
        if g.ring != ring:
            raise RingMismatchError("divisor in a different ring")
    if track is None:
        track = certificates.enabled
    key = o.key
    n = len(G)
    zero = ring.zero_exp()

    # Divisor entries: [terms, lt, lc, ecart, unit, quotients]
    # unit/quotients describe the entry as  unit*f - sum(q*G)  (tracking only).
    T = []
    for i, g in enumerate(G):
        if g.is_zero():
            continue
        t = dict(g.terms)
        lt = _lt(t, key)
        T.append([t, lt, t[lt], _deg(t) - sum(lt), None, i])

    h = dict(f.terms)
    unit = {zero: ONE} if track else None
    quot = [dict() for _ in range(n)] if track else None
    global_order = o.is_global

    steps = 0
    while h:
        steps += 1
        if max_steps is not None and steps > max_steps:
            raise StepBudgetExceeded(f"weak normal form exceeded {max_steps} steps")
        lt = _lt(h, key)
        if global_order:
            g = next((e for e in T if _divides(e[1], lt)), None)
            if g is None:
                break
        else:
            g = None
            for e in T:
                if (g is None or e[3] < g[3]) and _divides(e[1], lt):
                    g = e
            if g is None:
                break
            eh = _deg(h) - sum(lt)
            if g[3] > eh:
                entry = [dict(h), lt, h[lt], eh, None, None]
                if track:
                    entry[4] = (dict(unit), [dict(q) for q in quot])
                T.append(entry)
        c = h[lt] / g[2]
        m = tuple(map(sub, lt, g[1]))
        _axpy(h, c, m, g[0])
        if track:
            if g[5] is not None:
                _axpy(quot[g[5]], -c, m, {zero: ONE})
            else:
                gu, gq = g[4]
                _axpy(unit, c, m, gu)
                for qi, gqi in zip(quot, gq):
                    _axpy(qi, c, m, gqi)

    r = Polynomial._raw(ring, h)
    if not track:
        return WeakNF(r, None, None)
    result = WeakNF(
        r,
        Polynomial._raw(ring, unit),
        tuple(Polynomial._raw(ring, q) for q in quot),
    )
    if certificates.enabled:
        _verify(result, f, G, o)
    return result


def _verify(nf, f, G, o):
    if not nf.check(f, G).is_zero():
        raise AssertionError(f"weak normal form certificate failed for {f}")
    lt, _ = leading_term(nf.unit, o)
    if any(lt):
        raise AssertionError(f"unit {nf.unit} has a non-constant leading term")
    if o.is_control:
        local = set(o.local_vars())
        for e in nf.unit.terms:
            if any(e) and not any(e[i] for i in local):
                raise AssertionError(f"unit {nf.unit} not in 1 + <local vars>")
    if nf.remainder:
        rlt, _ = leading_term(nf.remainder, o)
        for g in G:
            if g and _divides(leading_monomial(g, o), rlt):
                raise AssertionError("remainder leading term is still reducible")
    certificates.record()


def reduce_full(f, G, o):
    """Full remainder of `f` modulo `G` under a global order."""
    key = o.key
    divs = []
    for g in G:
        if g:
            t = dict(g.terms)
            lt = _lt(t, key)
            divs.append((t, lt, t[lt]))
    p = dict(f.terms)
    r = {}
    while p:
        lt = _lt(p, key)
        for t, glt, glc in divs:
            if _divides(glt, lt):
                _axpy(p, p[lt] / glc, tuple(map(sub, lt, glt)), t)
                break
        else:
            r[lt] = p.pop(lt)
    return Polynomial._raw(f.ring, r)


def spoly(f, g, o):
    ef, cf = leading_term(f, o)
    eg, cg = leading_term(g, o)
    lcm = tuple(map(max, ef, eg))
    return f.mul_term(tuple(map(sub, lcm, ef)), 1 / cf) - g.mul_term(
        tuple(map(sub, lcm, eg)), 1 / cg
    )


def _buchberger(gens, o, product_criterion=True, chain_criterion=False, known=0):
    """Standard basis loop; returns monic elements, or [1] for the unit ideal.

    The first `known` (nonzero) generators are taken to be a standard basis
    already, so their mutual pairs are skipped."""
    ring = None
    S = []
    lts = []
    zero = None
    for g in gens:
        if g.is_zero():
            continue
        ring = g.ring
        zero = ring.zero_exp()
        g = monic(g, o)
        lt = leading_monomial(g, o)
        if lt == zero:
            return [ring.one()]
        S.append(g)
        lts.append(lt)
    if not S:
        return []
    global_order = o.is_global
    degs = [g.degree() for g in S]
    pairs = {(i, j) for j in range(max(known, 1), len(S)) for i in range(j)}
    done = set()

    def pair_key(p):
        i, j = p
        lcm = tuple(map(max, lts[i], lts[j]))
        if global_order:
            return (sum(lcm), j, i)
        # sugar: degree bound of the S-polynomial including tails
        d = sum(lcm) + max(degs[i] - sum(lts[i]), degs[j] - sum(lts[j]))
        return (d, sum(lcm), j, i)

    while pairs:
        p = min(pairs, key=pair_key)
        pairs.discard(p)
        i, j = p
        if product_criterion and not any(a and b for a, b in zip(lts[i], lts[j])):
            done.add(p)
            continue
        if chain_criterion:
            lcm = tuple(map(max, lts[i], lts[j]))
            if any(
                k not in (i, j)
                and _divides(lts[k], lcm)
                and (min(i, k), max(i, k)) not in pairs
                and (min(j, k), max(j, k)) not in pairs
                for k in range(len(S))
            ):
                done.add(p)
                continue
        done.add(p)
        h = mora_weak_nf(spoly(S[i], S[j], o), S, o).remainder
        if h.is_zero():
            continue
        h = monic(h, o)
        lt = leading_monomial(h, o)
        if lt == zero:
            return [ring.one()]
        k = len(S)
        S.append(h)
        lts.append(lt)
        degs.append(h.degree())
        pairs.update((m, k) for m in range(k))
    return S


class _Homogenized:
    """Gröbner basis of homogenized generators under "total degree, then
    `o` on the x-part"; its dehomogenization is a standard basis for `o`.
    Only ordinary division is needed, and generators can be added later."""

    def __init__(self, gens, o):
        self.order = o
        self.ring = o.ring
        (hname,) = self.ring.fresh_names("h", 1)
        self.big = Ring(self.ring.var_names + (hname,))
        self.big_order = validate_matrix(
            self.big, [[1] * self.big.nvars] + [list(r) + [0] for r in o.matrix]
        )
        self.basis = _buchberger(
            [self.homogenize(g) for g in gens if g], self.big_order, True, True
        )

    def homogenize(self, f):
        d = f.degree()
        return Polynomial._raw(self.big, {e + (d - sum(e),): c for e, c in f.terms.items()})

    def dehomogenize(self, g):
        t = {}
        for e, c in g.terms.items():
            e = e[:-1]
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial._raw(self.ring, t)

    def standard_basis(self, extra=None):
        """Dehomogenized basis, optionally of the ideal enlarged by `extra`."""
        basis = self.basis
        if extra is not None and extra and basis != [self.big.one()]:
            basis = _buchberger(
                basis + [self.homogenize(extra)], self.big_order, True, True, known=len(basis)
            )
        out = []
        for gh in basis:
            g = self.dehomogenize(gh)
            if not g:
                continue
            g = monic(g, self.order)
            if not any(leading_monomial(g, self.order)):
                return [self.ring.one()]
            out.append(g)
        return out


SB_METHODS = ("lazard", "mora")

# Mora's reduction can expand a power series for a long time before it
# finds its unit; past this many steps membership is decided by comparing
# leading ideals instead.
MORA_STEP_BUDGET = 400


@dataclass(eq=False)
class LocalizedIdealHandle:
    """An ideal together with an order; its standard basis (of the extension
    to the localization at the order) is computed once and cached."""

    ideal: Ideal
    order: object
    product_criterion: bool = True
    chain_criterion: bool = True
    method: str = "lazard"
    _sb: list = field(default=None, repr=False)
    _homog: object = field(default=None, repr=False)
    _lock: object = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.order.ring != self.ideal.ring:
            raise RingMismatchError("order and ideal live in different rings")
        if self.method not in SB_METHODS:
            raise ValueError(f"unknown standard basis method {self.method!r}")

    @property
    def ring(self):
        return self.ideal.ring

    def standard_basis(self):
        if self._sb is None:
            with self._lock:
                if self._sb is None:
                    if self.method == "lazard" and not self.order.is_global:
                        self._homog = _Homogenized(self.ideal.gens, self.order)
                        sb = self._homog.standard_basis()
                    else:
                        sb = _buchberger(
                            self.ideal.gens,
                            self.order,
                            self.product_criterion,
                            self.chain_criterion,
                        )
                    self._sb = _minimalize(sb, self.order)
        return list(self._sb)


def _minimalize(S, o):
    """Drop elements whose leading monomial is a multiple of another's
    (the first of equal leading monomials is kept)."""
    lts = [leading_monomial(g, o) for g in S]
    keep = []
    for i, lt in enumerate(lts):
        if not any(
            j != i and _divides(m, lt) and (m != lt or j < i) for j, m in enumerate(lts)
        ):
            keep.append(S[i])
    return keep


def standard_basis(h):
    return h.standard_basis()


def loc_membership(f, h):
    if f.ring != h.ring:
        raise RingMismatchError("polynomial not in the handle's ring")
    if f.is_zero():
        return True
    G = h.standard_basis()
    if h.method != "lazard" or h.order.is_global:
        return mora_weak_nf(f, G, h.order).remainder.is_zero()
    try:
        nf = mora_weak_nf(f, G, h.order, max_steps=MORA_STEP_BUDGET)
    except StepBudgetExceeded:
        return _membership_by_leading_ideal(f, h, G)
    return nf.remainder.is_zero()


def _membership_by_leading_ideal(f, h, G):
    """f is in the localized ideal iff adding it leaves the leading ideal
    unchanged (an inclusion of ideals with equal leading ideals is an
    equality in the localization)."""
    lts = [leading_monomial(g, h.order) for g in G]
    for g in h._homog.standard_basis(extra=f):
        lt = leading_monomial(g, h.order)
        if not any(_divides(m, lt) for m in lts):
            return False
    return True


def is_loc_whole_ring(h):
    return loc_membership(h.ring.one(), h)


def _require_global(o):
    if not o.is_global:
        raise OrderError(f"a global order is required, got a {o.kind} order")


def groebner_basis(ideal, o=None):
    """Reduced Gröbner basis, sorted by descending leading term."""
    o = o or named_order(ideal.ring, "degrevlex")
    _require_global(o)
    if o.ring != ideal.ring:
        raise RingMismatchError("order and ideal live in different rings")
    G = _buchberger(ideal.gens, o, product_criterion=True, chain_criterion=True)
    if not G:
        return []
    G = sorted(G, key=lambda g: o.key(leading_monomial(g, o)))
    minimal = []
    for g in G:
        lt = leading_monomial(g, o)
        if not any(_divides(leading_monomial(m, o), lt) for m in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(monic(reduce_full(g, others, o), o))
    return sorted(reduced, key=lambda g: o.key(leading_monomial(g, o)), reverse=True)


def _degrevlex(ring):
    return named_order(ring, "degrevlex")


def ideal_membership(f, ideal, gb=None):
    """Ordinary membership in a polynomial ideal."""
    o = _degrevlex(ideal.ring)
    gb = groebner_basis(ideal, o) if gb is None else gb
    return reduce_full(f, gb, o).is_zero()


def is_whole_ring(ideal):
    gb = groebner_basis(ideal, _degrevlex(ideal.ring))
    return len(gb) == 1 and gb[0].is_constant()


def ideal_sum_is_whole_ring(I, J):
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    return is_whole_ring(Ideal(I.ring, I.gens + J.gens))


def ideals_equal(I, J):
    """Equality of ideals by comparing reduced degrevlex Gröbner bases."""
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    o = _degrevlex(I.ring)
    return groebner_basis(I, o) == groebner_basis(J, o)


def ideal_contains(big, small):
    """small ⊆ big."""
    o = _degrevlex(big.ring)
    gb = groebner_basis(big, o)
    return all(reduce_full(g, gb, o).is_zero() for g in small.gens)


def eliminate(ideal, drop_vars):
    """Generators of ``ideal ∩ Q[remaining variables]`` (same ring)."""
    drop_vars = list(drop_vars)
    ring = ideal.ring
    idx = [ring.index(v) for v in drop_vars]
    if not idx:
        return Ideal(ring, tuple(groebner_basis(ideal)))
    o = elimination_order(ring, drop_vars)
    gb = groebner_basis(ideal, o)
    kept = [g for g in gb if not set(g.variables()) & set(idx)]
    return Ideal(ring, tuple(kept))


def ideal_intersection(I, J):
    if I.ring != J.ring:
        raise RingMismatchError("ideals live in different rings")
    ring = I.ring
    if not I.nonzero_gens() or not J.nonzero_gens():
        return Ideal(ring, ())
    (zname,) = ring.fresh_names("z", 1)
    big = ring.extend([zname])
    z = big.var(zname)
    gens = [z * change_ring(f, big) for f in I.gens if f]
    gens += [(1 - z) * change_ring(g, big) for g in J.gens if g]
    elim = eliminate(Ideal(big, tuple(gens)), [zname])
    return Ideal(ring, tuple(change_ring(g, ring) for g in elim.gens))


def radical_membership(f, ideal):
    """Rabinowitsch: f ∈ √I  iff  1 ∈ I + <1 - z*f>."""
    ring = ideal.ring
    (zname,) = ring.fresh_names("z", 1)
    big = ring.extend([zname])
    z = big.var(zname)
    gens = [change_ring(g, big) for g in ideal.gens] + [1 - z * change_ring(f, big)]
    return is_whole_ring(Ideal(big, tuple(gens)))


@dataclass(frozen=True)
class MonomialIdeal:
    ring: object
    min_gens: tuple

    def __post_init__(self):
        gens = sorted(set(tuple(g) for g in self.min_gens), key=lambda e: (sum(e), e))
        minimal = []
        for g in gens:
            if not any(_divides(m, g) for m in minimal):
                minimal.append(g)
        object.__setattr__(self, "min_gens", tuple(minimal))

    def is_unit(self):
        return any(not any(g) for g in self.min_gens)

    def is_zero(self):
        return not self.min_gens

    def contains(self, exp):
        return any(_divides(g, exp) for g in self.min_gens)

    def to_ideal(self):
        return Ideal(self.ring, tuple(Polynomial(self.ring, {g: 1}) for g in self.min_gens))

    @classmethod
    def from_ideal(cls, ideal):
        if not ideal.is_monomial():
            raise ValueError("ideal is not generated by monomials")
        return cls(ideal.ring, tuple(next(iter(g.terms)) for g in ideal.nonzero_gens()))


def leading_ideal(G, o):
    ring = o.ring
    return MonomialIdeal(ring, tuple(leading_monomial(g, o) for g in G if g))


def _independent(M, subset):
    s = set(subset)
    return not any(all(i in s for i, e in enumerate(g) if e) for g in M.min_gens)


def dim_monomial_ideal(M):
    n = M.ring.nvars
    for size in range(n, -1, -1):
        if any(_independent(M, u) for u in itertools.combinations(range(n), size)):
            return size
    return -1


def strongly_independent_sets(ideal, o=None):
    """All inclusion-maximal strongly independent sets, as tuples of names."""
    o = o or _degrevlex(ideal.ring)
    _require_global(o)
    M = leading_ideal(groebner_basis(ideal, o), o)
    n = ideal.ring.nvars
    indep = [
        set(u)
        for size in range(n, -1, -1)
        for u in itertools.combinations(range(n), size)
        if _independent(M, u)
    ]
    maximal = [u for u in indep if not any(u < v for v in indep)]
    names = ideal.ring.var_names
    return [tuple(names[i] for i in sorted(u)) for u in maximal]


def dim_ideal(ideal):
    o = _degrevlex(ideal.ring)
    return dim_monomial_ideal(leading_ideal(groebner_basis(ideal, o), o))


def dim_leading_ideal_loc(h):
    if not h.order.is_control:
        raise RefusedError(
            "dimension of the leading ideal is not a valid surrogate under a non-control order"
        )
    return dim_monomial_ideal(leading_ideal(h.standard_basis(), h.order))
