"""Semigroup monomial orders given by integer matrices.

An order compares exponent vectors ``a`` and ``b`` by the rows of ``M a``
and ``M b`` lexicographically.  Full column rank makes this a total order.
"""

from dataclasses import dataclass, field

from .errors import OrderError
from .poly import Ring

GREATER = 1
EQUAL = 0
LESS = -1

NAMED_ORDERS = ("lex", "deglex", "degrevlex", "neglex", "negdegrevlex")


def matrix_rank(rows):
    """Rank over Q by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            for c in range(col + 1, ncols):
                m[r][c] = (p * m[r][c] - m[r][col] * m[rank][c]) // prev
            m[r][col] = 0
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


class _KeyCache(dict):
    """exp -> tuple of row dot products; a larger key is a larger term."""

    LIMIT = 200_000

    def __init__(self, rows):
        super().__init__()
        self.rows = rows

    def __missing__(self, exp):
        k = tuple(sum(r * e for r, e in zip(row, exp)) for row in self.rows)
        if len(self) < self.LIMIT:
            self[exp] = k
        return k


@dataclass(frozen=True)
class ColumnLevel:
    var_index: int
    level: int
    polarity: str  # "local" | "global"


@dataclass(frozen=True, eq=False)
class OrderSpec:
    ring: Ring
    matrix: tuple
    name: str = None
    levels: tuple = field(init=False, repr=False)
    characteristic: tuple = field(init=False)
    is_control: bool = field(init=False)

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.matrix)
        object.__setattr__(self, "matrix", rows)
        levels = []
        for j in range(self.ring.nvars):
            level = next(i for i, r in enumerate(rows) if r[j])
            polarity = "global" if rows[level][j] > 0 else "local"
            levels.append(ColumnLevel(j, level, polarity))
        object.__setattr__(self, "levels", tuple(levels))
        object.__setattr__(
            self,
            "characteristic",
            tuple(1 if c.polarity == "global" else -1 for c in levels),
        )
        local = [c.level for c in levels if c.polarity == "local"]
        glob = [c.level for c in levels if c.polarity == "global"]
        object.__setattr__(
            self, "is_control", not local or not glob or max(local) < min(glob)
        )
        cache = _KeyCache(rows)
        object.__setattr__(self, "_cache", cache)
        # dict lookup at C speed on the hot path of every leading-term search
        object.__setattr__(self, "key", cache.__getitem__)

    def __reduce__(self):
        return (OrderSpec, (self.ring, self.matrix, self.name))

    @property
    def is_global(self):
        return all(c == 1 for c in self.characteristic)

    @property
    def is_local(self):
        return all(c == -1 for c in self.characteristic)

    @property
    def kind(self):
        if self.is_global:
            return "global"
        if self.is_local:
            return "local"
        return "mixed"

    def local_vars(self):
        return [i for i, c in enumerate(self.characteristic) if c == -1]

    def global_vars(self):
        return [i for i, c in enumerate(self.characteristic) if c == 1]

    def compare(self, a, b):
        a, b = tuple(a), tuple(b)
        n = self.ring.nvars
        if len(a) != n or len(b) != n:
            raise ValueError("exponent vector length does not match the ring")
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return EQUAL
        return GREATER if ka > kb else LESS

    def with_ring(self, ring):
        return validate_matrix(ring, self.matrix, self.name)

    def to_spec_string(self):
        rows = ",".join("[" + ",".join(str(x) for x in r) + "]" for r in self.matrix)
        return f"matrix([{rows}])"

    def __eq__(self, other):
        return (
            isinstance(other, OrderSpec)
            and self.ring == other.ring
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.ring, self.matrix))


def validate_matrix(ring, rows, name=None):
    rows = [list(r) for r in rows]
    if not rows:
        raise OrderError("empty order matrix")
    n = ring.nvars
    for r in rows:
        if len(r) != n:
            raise OrderError(f"matrix row {r} has length {len(r)}, ring has {n} variables")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in r):
            raise OrderError("order matrices must have integer entries")
    if matrix_rank(rows) != n:
        raise OrderError("not a total order: matrix rank is less than the number of variables")
    return OrderSpec(ring, tuple(tuple(r) for r in rows), name)


def compare(o, a, b):
    return o.compare(a, b)


def is_control_order(o):
    return o.is_control


def characteristic_vector(o):
    return o.characteristic


def named_rows(name, k):
    """Rows of a named order on k variables."""
    eye = [[int(i == j) for j in range(k)] for i in range(k)]
    if name == "lex":
        return eye
    if name == "deglex":
        return [[1] * k] + eye[: k - 1]
    if name == "degrevlex":
        return [[1] * k] + [[-x for x in eye[i]] for i in range(k - 1, 0, -1)]
    if name == "neglex":
        return [[-x for x in r] for r in eye]
    if name == "negdegrevlex":
        return [[-1] * k] + [[-x for x in eye[i]] for i in range(k - 1, 0, -1)]
    raise OrderError(f"unknown order name {name!r}")


def named_order(ring, name):
    return validate_matrix(ring, named_rows(name, ring.nvars), name)


def block_order(ring, blocks, name=None):
    """Stack the rows of each ``(order_name, var_names)`` block, padded with
    zeros outside the block.  Blocks must partition the ring's variables."""
    seen = []
    rows = []
    for order_name, names in blocks:
        idx = [ring.index(v) for v in names]
        seen.extend(idx)
        if not idx:
            continue
        for sub in named_rows(order_name, len(idx)):
            row = [0] * ring.nvars
            for i, x in zip(idx, sub):
                row[i] = x
            rows.append(row)
    if sorted(seen) != list(range(ring.nvars)):
        raise OrderError("blocks do not partition the ring variables")
    return validate_matrix(ring, rows, name)


def make_block_order(ring, local_vars, global_vars):
    """Control order with exactly `local_vars` local: a negative degree
    reverse lex block above a degree reverse lex block."""
    local_vars, global_vars = list(local_vars), list(global_vars)
    if set(local_vars) & set(global_vars) or sorted(local_vars + global_vars) != sorted(
        ring.var_names
    ):
        raise OrderError("local and global variable sets must partition the ring")
    local_vars = [v for v in ring.var_names if v in set(local_vars)]
    global_vars = [v for v in ring.var_names if v in set(global_vars)]
    return block_order(
        ring, [("negdegrevlex", local_vars), ("degrevlex", global_vars)]
    )


def elimination_order(ring, drop_vars):
    """Global order eliminating `drop_vars` (block degrevlex, dropped first)."""
    drop = [v for v in ring.var_names if v in set(drop_vars)]
    keep = [v for v in ring.var_names if v not in set(drop_vars)]
    return block_order(ring, [("degrevlex", drop), ("degrevlex", keep)])


def find_control_witness(o, max_exp=6):
    """A term divisible by a local variable that is > 1, or None.

    Bounded search over pairs (local x_i, global x_j) of x_i * x_j^k,
    which suffices by the column-level argument for control orders."""
    n = o.ring.nvars
    zero = (0,) * n
    for i in o.local_vars():
        for j in o.global_vars():
            for k in range(1, max_exp + 1):
                e = [0] * n
                e[i] = 1
                e[j] = k
                if o.compare(tuple(e), zero) == GREATER:
                    return tuple(e)
    return None
