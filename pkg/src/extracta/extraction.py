"""Extraction of an ideal I by a control ideal J.

The extraction keeps the primary components Q of I with Q + J proper.  It
is never computed from a decomposition here (see :mod:`extracta.oracle` for
that); instead I is lifted to ``I' = <I, t1 - g1, ..., ts - gs>`` in a ring
with fresh variables t, localized at a control order in which exactly the
t's are local, and questions about the extraction become questions about
``I'`` there:

* f is in the extraction  iff  f is in the localized I';
* f is in its radical     iff  f is in the radical of the localized I';
* both have the same Krull dimension.
"""

from dataclasses import dataclass

from .errors import DecompositionError, OrderError, RingMismatchError
from .oracle import beta_oracle
from .orders import make_block_order, validate_matrix
from .poly import Ideal, Ring, change_ring
from .standard_basis import (
    LocalizedIdealHandle,
    dim_leading_ideal_loc,
    groebner_basis,
    is_loc_whole_ring,
    loc_membership,
)


@dataclass(frozen=True, eq=False)
class ExtractionQuery:
    I: Ideal
    J: Ideal
    t_names: tuple
    lifted_ring: Ring
    lifted_ideal: Ideal
    order: object
    handle: LocalizedIdealHandle

    @property
    def ring(self):
        return self.I.ring


def lift(I, J, order=None):
    """Build ``I'`` and its localization handle.

    `order` may replace the default block order by any control order on the
    lifted ring whose local variables are exactly the new t's."""
    if I.ring != J.ring:
        raise RingMismatchError("I and J live in different rings")
    ring = I.ring
    if not J.gens:
        J = Ideal(ring, (ring.zero(),))
    t_names = tuple(ring.fresh_names("t", len(J.gens)))
    big = ring.extend(t_names)
    gens = [change_ring(f, big) for f in I.gens]
    gens += [big.var(t) - change_ring(g, big) for t, g in zip(t_names, J.gens)]
    lifted = Ideal(big, tuple(gens))
    if order is None:
        order = make_block_order(big, t_names, ring.var_names)
    else:
        if order.ring != big:
            raise OrderError(f"order must live in {big}")
        want = tuple(-1 if v in t_names else 1 for v in big.var_names)
        if not order.is_control or order.characteristic != want:
            raise OrderError("order must be a control order local exactly in the lifted variables")
    handle = LocalizedIdealHandle(lifted, order)
    return ExtractionQuery(I, J, t_names, big, lifted, order, handle)


def _check(f, q):
    if f.ring != q.ring:
        raise RingMismatchError("polynomial is not in the original ring")


def extraction_membership(f, q):
    _check(f, q)
    return loc_membership(change_ring(f, q.lifted_ring), q.handle)


def rabinowitsch_handle(f, q):
    """Localization handle for ``<I', 1 - z*f>`` in the lifted ring extended
    by z.  z gets its own top row, so every term involving z exceeds every
    term without it and the units of the localization stay inside the
    lifted ring."""
    (zname,) = q.lifted_ring.fresh_names("z", 1)
    ring = Ring((zname,) + q.lifted_ring.var_names)
    rows = [[1] + [0] * q.lifted_ring.nvars]
    rows += [[0] + list(r) for r in q.order.matrix]
    order = validate_matrix(ring, rows)
    z = ring.var(zname)
    gens = [change_ring(g, ring) for g in q.lifted_ideal.gens]
    gens.append(1 - z * change_ring(f, ring))
    return LocalizedIdealHandle(Ideal(ring, tuple(gens)), order)


def extraction_radical_membership(f, q):
    _check(f, q)
    return is_loc_whole_ring(rabinowitsch_handle(f, q))


def extraction_is_trivial(q):
    return is_loc_whole_ring(q.handle)


def extraction_dim(q):
    if extraction_is_trivial(q):
        return -1
    return dim_leading_ideal_loc(q.handle)


@dataclass(frozen=True, eq=False)
class ExtractionResult:
    status: str  # "trivial" | "proper"
    query: ExtractionQuery
    generators: tuple = None

    def contains(self, f):
        return extraction_membership(f, self.query)


def extract(I, J, decomposition=None):
    """Membership handle for the extraction; explicit generators only when a
    decomposition of I is supplied."""
    q = lift(I, J)
    status = "trivial" if extraction_is_trivial(q) else "proper"
    gens = None
    if decomposition is not None:
        if decomposition.ideal.ring != I.ring:
            raise RingMismatchError("decomposition is for a different ring")
        gens = tuple(groebner_basis(beta_oracle(decomposition, J)))
    return ExtractionResult(status, q, gens)


def loc_ideal_equal(r1, r2, gens1=None, gens2=None):
    """Equality of two extractions decided by cross-membership of witness
    generators (explicit or oracle-provided)."""
    if r1.query.ring != r2.query.ring:
        raise RingMismatchError("extractions over different rings")
    gens1 = gens1 if gens1 is not None else r1.generators
    gens2 = gens2 if gens2 is not None else r2.generators
    if gens1 is None or gens2 is None:
        raise DecompositionError("witness generators are required on both sides")
    return all(extraction_membership(g, r2.query) for g in gens1) and all(
        extraction_membership(g, r1.query) for g in gens2
    )
