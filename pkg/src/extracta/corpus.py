"""Randomized corpus of decomposable instances and the cross-checks run on it.

Every instance carries ideals I, J, H, L in one ring together with primary
decompositions of all four, so both the standard-basis route and the
decomposition oracle can answer the same questions.  Generation is
deterministic given a seed (``EXTRACTA_SEED``).
"""

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .extraction import extraction_dim, extraction_membership, lift
from .identities import check_identities
from .oracle import (
    RationalPointSet,
    beta_decomposition,
    dim_oracle,
    in_ideal,
    monomial_primary_decomposition,
    point_ideal,
    principal_decomposition,
    zero_dim_contract_oracle,
)
from .orders import OrderError, make_block_order, validate_matrix
from .poly import Ideal, Polynomial, Ring
from .standard_basis import LocalizedIdealHandle, MonomialIdeal, groebner_basis, loc_membership

DEFAULT_SEED = 20141
VAR_NAMES = ("x", "y", "z", "w")


def corpus_seed():
    return int(os.environ.get("EXTRACTA_SEED", DEFAULT_SEED))


@dataclass
class Instance:
    kind: str  # "monomial" | "points" | "principal"
    ring: Ring
    I: Ideal
    J: Ideal
    H: Ideal
    L: Ideal
    decomps: dict
    points: RationalPointSet = None
    label: str = ""


def _random_monomial_ideal(rng, ring, max_deg=4, max_gens=4):
    n = ring.nvars
    exps = []
    for _ in range(rng.randint(1, max_gens)):
        d = rng.randint(1, max_deg)
        e = [0] * n
        for _ in range(d):
            e[rng.randrange(n)] += 1
        exps.append(tuple(e))
    M = MonomialIdeal(ring, tuple(exps))
    return M.to_ideal(), monomial_primary_decomposition(M)


def _random_points(rng, ring, max_points=5, coords=(-1, 0, 1, 2)):
    k = rng.randint(1, max_points)
    pts = set()
    while len(pts) < k:
        pts.add(tuple(rng.choice(coords) for _ in range(ring.nvars)))
    P = RationalPointSet(ring, tuple(sorted(pts)))
    ideal, dec = point_ideal(P)
    return P, ideal, dec


def _irreducible_pool(ring):
    x, y = ring.gens()[:2]
    pool = [x, y, x - y, x + y - 1, x * y - 1, y - 1, x ** 2 - y, x ** 2 + 1, x ** 2 + y ** 2 - 1]
    if ring.nvars > 2:
        z = ring.gens()[2]
        pool += [z, x * z - 1, z - x - y]
    return pool


def _random_principal(rng, ring):
    pool = _irreducible_pool(ring)
    k = rng.randint(1, 3)
    factors = [(p, rng.randint(1, 2)) for p in rng.sample(pool, k)]
    dec = principal_decomposition(factors)
    return dec.ideal, dec


def _control_pool(rng, ring):
    """A random decomposable control ideal."""
    n = ring.nvars
    choice = rng.random()
    gens = ring.gens()
    if choice < 0.35:
        pt = tuple(rng.choice((0, 1)) for _ in range(n))
        _, ideal, dec = _point_set(ring, [pt])
        return ideal, dec
    if choice < 0.55:
        sub = rng.sample(range(n), rng.randint(1, n))
        M = MonomialIdeal(ring, tuple(ring.unit_exp(i) for i in sub))
        return M.to_ideal(), monomial_primary_decomposition(M)
    if choice < 0.75:
        return _random_monomial_ideal(rng, ring, max_deg=2, max_gens=2)
    if choice < 0.85:
        P, ideal, dec = _random_points(rng, ring, max_points=2, coords=(0, 1))
        return ideal, dec
    if choice < 0.93:
        M = MonomialIdeal(ring, ())
        dec = monomial_primary_decomposition(M)
        return Ideal(ring, (ring.zero(),)), dec
    M = MonomialIdeal(ring, (ring.zero_exp(),))
    return Ideal(ring, (ring.one(),)), monomial_primary_decomposition(M)


def _point_set(ring, pts):
    P = RationalPointSet(ring, tuple(pts))
    ideal, dec = point_ideal(P)
    return P, ideal, dec


def generate_corpus(count=210, seed=None):
    """Instances cycling through the three classes."""
    seed = corpus_seed() if seed is None else seed
    rng = random.Random(seed)
    out = []
    for k in range(count):
        kind = ("monomial", "points", "principal")[k % 3]
        if kind == "monomial":
            ring = Ring(VAR_NAMES[: rng.randint(2, 4)])
            I, dI = _random_monomial_ideal(rng, ring)
            H, dH = _random_monomial_ideal(rng, ring)
            P = None
        elif kind == "points":
            ring = Ring(VAR_NAMES[: rng.randint(2, 3)])
            P, I, dI = _random_points(rng, ring)
            _, H, dH = _random_points(rng, ring, max_points=3)
        else:
            ring = Ring(VAR_NAMES[: rng.randint(2, 3)])
            I, dI = _random_principal(rng, ring)
            H, dH = _random_principal(rng, ring)
            P = None
        J, dJ = _control_pool(rng, ring)
        L, dL = _control_pool(rng, ring)
        out.append(
            Instance(kind, ring, I, J, H, L, {"I": dI, "J": dJ, "H": dH, "L": dL}, P, f"{kind}-{k}")
        )
    return out


def random_poly(rng, ring, max_deg=3, max_terms=4, coeffs=(-2, -1, 1, 2)):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        e = [0] * ring.nvars
        for _ in range(d):
            e[rng.randrange(ring.nvars)] += 1
        terms[tuple(e)] = rng.choice(coeffs)
    return Polynomial(ring, terms)


def probes(rng, ring, gens, count=20):
    """Half random polynomials, half random combinations of `gens`."""
    out = []
    gens = [g for g in gens if g]
    for k in range(count):
        if k % 2 and gens:
            f = ring.zero()
            for g in rng.sample(gens, rng.randint(1, len(gens))):
                f = f + random_poly(rng, ring, max_deg=2, max_terms=2) * g
            out.append(f)
        else:
            out.append(random_poly(rng, ring))
    return out


def mixed_orders(rng, ring, count=5):
    """Distinct mixed orders, including non-control ones."""
    n = ring.nvars
    found = []
    if n == 2:
        found = [
            validate_matrix(ring, [[1, 0], [0, -1]]),
            validate_matrix(ring, [[-1, 0], [0, 1]]),
            validate_matrix(ring, [[0, -1], [1, 0]]),
        ]
    while len(found) < count:
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        try:
            o = validate_matrix(ring, rows)
        except OrderError:
            continue
        if o.kind == "mixed" and o not in found:
            found.append(o)
    return found


def equivalent_control_orders(q):
    """Control orders on q's lifted ring with the same characteristic as
    q.order: a permuted local block, and a non-block order (a total degree
    row weighting the t's positively, global tie-breaks before local ones)."""
    ring = q.lifted_ring
    t = list(q.t_names)
    xs = [v for v in ring.var_names if v not in t]
    permuted = make_block_order(Ring(tuple(reversed(t)) + tuple(xs)), t, xs)
    permuted = validate_matrix(
        ring,
        [
            [row[permuted.ring.index(v)] for v in ring.var_names]
            for row in permuted.matrix
        ],
    )
    is_t = [v in t for v in ring.var_names]
    xi = [ring.index(v) for v in xs]
    ti = [ring.index(v) for v in t]
    rows = [[-1 if a else 0 for a in is_t], [1] * ring.nvars]
    rows += [[-e for e in ring.unit_exp(i)] for i in reversed(xi[1:])]
    rows += [[-e for e in ring.unit_exp(i)] for i in reversed(ti[1:])]
    mixed = validate_matrix(ring, rows)
    return [o for o in (permuted, mixed) if o.is_control and o.characteristic == q.order.characteristic]


def check_membership_agreement(inst, rng, nprobes=20):
    """Criterion: extraction membership equals membership in the oracle
    extraction, over β, I and J generators plus random probes.
    Returns (agreements, total, disagreements)."""
    ring = inst.ring
    beta = beta_decomposition(inst.decomps["I"], inst.J).ideal
    gb = groebner_basis(beta)
    q = lift(inst.I, inst.J)
    fs = list(gb) + list(inst.I.gens) + list(inst.J.gens) + probes(rng, ring, gb, nprobes)
    bad = []
    for f in fs:
        if extraction_membership(f, q) != in_ideal(f, gb, ring):
            bad.append(str(f))
    return len(fs) - len(bad), len(fs), bad


def check_dimension(inst):
    kept = beta_decomposition(inst.decomps["I"], inst.J)
    q = lift(inst.I, inst.J)
    return extraction_dim(q) == dim_oracle(kept)


def check_order_invariance(inst, rng, nprobes=10):
    ring = inst.ring
    q = lift(inst.I, inst.J)
    beta = beta_decomposition(inst.decomps["I"], inst.J).ideal
    fs = groebner_basis(beta) + list(inst.I.gens) + probes(rng, ring, groebner_basis(beta), nprobes)
    base = [extraction_membership(f, q) for f in fs]
    for o in equivalent_control_orders(q):
        q2 = lift(inst.I, inst.J, order=o)
        if [extraction_membership(f, q2) for f in fs] != base:
            return False
    gens = [g for g in inst.J.gens]
    total = ring.zero()
    for g in gens:
        total = total + g
    J2 = Ideal(ring, tuple(reversed(gens)) + (total,))
    q3 = lift(inst.I, J2)
    return [extraction_membership(f, q3) for f in fs] == base


def check_zero_dim(inst, rng, norders=5, nprobes=10):
    """Point-set contraction by coordinates versus localized membership
    under several mixed orders (control or not).  Returns (ok, orders)."""
    P = inst.points
    ring = inst.ring
    results = []
    orders = mixed_orders(rng, ring, norders)
    for o in orders:
        C = zero_dim_contract_oracle(P, o)
        gb = groebner_basis(C)
        h = LocalizedIdealHandle(inst.I, o)
        fs = list(gb) + list(inst.I.gens) + probes(rng, ring, gb, nprobes)
        results.append(all(loc_membership(f, h) == in_ideal(f, gb, ring) for f in fs))
    return all(results), orders


CHECKS = ("membership", "dimension", "invariance", "zero_dim", "identities")


def run_instance(inst, seed=0, checks=CHECKS):
    """Run the selected cross-checks on one instance.  The RNG for probes is
    seeded from (seed, label) so results do not depend on scheduling."""
    rng = random.Random(f"{seed}:{inst.label}")
    result = {"label": inst.label, "kind": inst.kind}
    if "membership" in checks:
        result["membership"] = list(check_membership_agreement(inst, rng))
    if "dimension" in checks:
        result["dimension"] = check_dimension(inst)
    if "invariance" in checks:
        result["invariance"] = check_order_invariance(inst, rng)
    if "zero_dim" in checks and inst.points is not None:
        result["zero_dim"] = check_zero_dim(inst, rng)[0]
    if "identities" in checks:
        report = check_identities(inst.I, inst.J, inst.H, inst.L, inst.decomps)
        result["identities"] = {c.key: c.status for c in report.checks}
    return result


def _run(args):
    return run_instance(*args)


def run_corpus(instances, seed=0, jobs=1, checks=CHECKS):
    args = [(inst, seed, tuple(checks)) for inst in instances]
    if jobs <= 1:
        return [_run(a) for a in args]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run, args))


def summarize(results):
    def failed(key):
        return [r["label"] for r in results if r.get(key) is False]

    summary = {
        "instances": len(results),
        "membership_checks": sum(r["membership"][1] for r in results if "membership" in r),
        "membership_disagreements": sum(
            r["membership"][1] - r["membership"][0] for r in results if "membership" in r
        ),
        "dimension_failures": failed("dimension"),
        "invariance_failures": failed("invariance"),
        "zero_dim_failures": failed("zero_dim"),
        "identity_failures": sorted(
            f"{r['label']}:{k}"
            for r in results
            for k, s in r.get("identities", {}).items()
            if s == "fail"
        ),
    }
    summary["ok"] = not (
        summary["membership_disagreements"]
        or summary["dimension_failures"]
        or summary["invariance_failures"]
        or summary["zero_dim_failures"]
        or summary["identity_failures"]
    )
    return summary
