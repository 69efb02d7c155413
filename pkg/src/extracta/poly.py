"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
rational coefficients (``gmpy2.mpq``).  Storage carries no term order;
anything that needs "the leading term" takes an order explicitly.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq as QQ
from operator import add
from types import MappingProxyType

from .errors import RingMismatchError

RATIONAL = type(QQ(0))
IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Ring:
    """Polynomial ring Q[var_names]."""

    var_names: tuple

    def __post_init__(self):
        names = tuple(self.var_names)
        object.__setattr__(self, "var_names", names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        for name in names:
            if not isinstance(name, str) or not IDENT.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")

    @classmethod
    def of(cls, *names):
        if len(names) == 1 and isinstance(names[0], str) and "," in names[0]:
            names = [n.strip() for n in names[0].split(",")]
        return cls(tuple(names))

    @property
    def nvars(self):
        return len(self.var_names)

    def index(self, name):
        try:
            return self.var_names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r} in ring {self}") from None

    def zero_exp(self):
        return (0,) * self.nvars

    def unit_exp(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return tuple(e)

    def var(self, name):
        return Polynomial(self, {self.unit_exp(self.index(name)): 1})

    def gens(self):
        return [Polynomial(self, {self.unit_exp(i): 1}) for i in range(self.nvars)]

    def const(self, c):
        return Polynomial(self, {self.zero_exp(): c})

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return self.const(1)

    def parse(self, text):
        from .parsing import parse_polynomial

        return parse_polynomial(text, self)

    def fresh_names(self, stem, count, avoid=()):
        """Names ``stem1..stemN`` not clashing with this ring or `avoid`;
        clashing names get ``_`` appended until free."""
        taken = set(self.var_names) | set(avoid)
        out = []
        for i in range(1, count + 1):
            name = f"{stem}{i}"
            while name in taken:
                name += "_"
            taken.add(name)
            out.append(name)
        return out

    def extend(self, names):
        return Ring(self.var_names + tuple(names))

    def __str__(self):
        return "Q[" + ",".join(self.var_names) + "]"


def _grevlex_key(exp):
    return (sum(exp),) + tuple(-e for e in reversed(exp))


def _fmt_coeff(c):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class Polynomial:
    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring, terms=None):
        self.ring = ring
        clean = {}
        n = ring.nvars
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent vector {exp} for {ring}")
            c = QQ(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        # terms must already be canonical: tuple keys, nonzero rationals
        p = object.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and self.ring.zero_exp() in self._terms)

    def constant_coeff(self):
        return self._terms.get(self.ring.zero_exp(), QQ(0))

    def coeff(self, exp):
        return self._terms.get(tuple(exp), QQ(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def variables(self):
        """Indices of the variables that occur in some term."""
        used = set()
        for exp in self._terms:
            used.update(i for i, e in enumerate(exp) if e)
        return sorted(used)

    def is_monomial(self):
        return len(self._terms) == 1

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self.ring.const(other)
        if other.ring != self.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                e = tuple(map(add, ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = QQ(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {e: v * c for e, v in self._terms.items()})

    def mul_term(self, exp, c):
        c = QQ(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring, {tuple(map(add, e, exp)): v * c for e, v in self._terms.items()}
        )

    def evaluate(self, point):
        """Value at a point given as a sequence of rationals."""
        if len(point) != self.ring.nvars:
            raise ValueError("point has wrong dimension")
        total = QQ(0)
        for exp, c in self._terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v *= QQ(x) ** e
            total += v
        return total

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction, RATIONAL)):
            return self.is_constant() and self.constant_coeff() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, order=None):
        """Terms in descending order; `order` is anything with ``key(exp)``."""
        key = order.key if order is not None else _grevlex_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def to_str(self, order=None):
        if not self._terms:
            return "0"
        names = self.ring.var_names
        parts = []
        for exp, c in self.sorted_terms(order):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e
            )
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono:
                body = _fmt_coeff(a)
            elif a == 1:
                body = mono
            else:
                body = f"{_fmt_coeff(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()!r} in {self.ring})"


@dataclass(frozen=True)
class Ideal:
    """Ideal given by a finite generator list."""

    ring: Ring
    gens: tuple

    def __post_init__(self):
        gens = tuple(self.gens)
        for g in gens:
            if not isinstance(g, Polynomial) or g.ring != self.ring:
                raise RingMismatchError(f"generator {g!r} not in {self.ring}")
        object.__setattr__(self, "gens", gens)

    @classmethod
    def parse(cls, ring, *texts):
        return cls(ring, tuple(ring.parse(t) for t in texts))

    def nonzero_gens(self):
        return [g for g in self.gens if g]

    def is_monomial(self):
        return all(g.is_monomial() for g in self.nonzero_gens())

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def __str__(self):
        return "<" + ", ".join(str(g) for g in self.gens) + ">"


def change_ring(f, target):
    """Re-express `f` in a ring whose variables include all of f's used
    variables (by name)."""
    return substitute(f, {}, target)


def substitute(f, assignments, target=None):
    """Simultaneously replace variables of `f` by polynomials in `target`.

    Unassigned variables keep their names and must exist in `target`.
    `target` defaults to the ring of the replacement polynomials, or to
    f's ring when nothing is assigned.
    """
    ring = f.ring
    for name in assignments:
        ring.index(name)
    if target is None:
        rings = {g.ring for g in assignments.values()}
        if len(rings) > 1:
            raise RingMismatchError("replacements live in different rings")
        target = rings.pop() if rings else ring
    images = []
    for name in ring.var_names:
        if name in assignments:
            g = assignments[name]
            if g.ring != target:
                raise RingMismatchError(f"replacement for {name} not in {target}")
            images.append(g)
        elif name in target.var_names:
            images.append(target.var(name))
        else:
            images.append(None)
    result = {}
    powers = [{} for _ in images]
    for exp, c in f.terms.items():
        term = target.const(c)
        for i, e in enumerate(exp):
            if not e:
                continue
            if images[i] is None:
                raise KeyError(
                    f"target ring {target} lacks unassigned variable {ring.var_names[i]}"
                )
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e
            term = term * cache[e]
        for te, tc in term.terms.items():
            s = result.get(te, 0) + tc
            if s:
                result[te] = s
            else:
                del result[te]
    return Polynomial._raw(target, result)
