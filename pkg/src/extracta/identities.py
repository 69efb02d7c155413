"""Algebraic identities satisfied by extractions, checked two ways.

Each identity compares two ideals built from oracle extractions (reduced
Gröbner basis equality).  Where the left side is itself an extraction
``β(X, Y)`` of explicit ideals, the right side's generators are also fed to
the standard-basis membership test on ``lift(X, Y)``, so the identity is
exercised on the localized route too.
"""

from dataclasses import dataclass, field

from .errors import DecompositionError
from .extraction import extraction_membership, extraction_radical_membership, lift
from .oracle import beta_decomposition, beta_oracle, radical_of_decomposition
from .standard_basis import groebner_basis, ideal_intersection, ideals_equal

IDENTITY_NAMES = {
    "1": "β(I,√J) = β(I,J)",
    "2": "β(√I,J) = √β(I,J)",
    "3": "β(I∩H,J) = β(I,J) ∩ β(H,J)",
    "4": "β(I,J∩L) = β(I,J) ∩ β(I,L)",
    "5": "β(β(I,J),J) = β(I,J)",
    "6": "β(I,β(J,I)) = β(I,J)",
    "7": "β(β(I,J),L) = β(β(I,L),J)",
    "lift": "(I∩H)' = I'∩H'",
}


@dataclass
class IdentityCheck:
    key: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""

    @property
    def name(self):
        return IDENTITY_NAMES[self.key]


@dataclass
class IdentityReport:
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def status(self, key):
        return next(c.status for c in self.checks if c.key == key)

    def as_dict(self):
        return {c.key: {"identity": c.name, "status": c.status, "detail": c.detail} for c in self.checks}


def _members(gens, X, Y):
    q = lift(X, Y)
    return all(extraction_membership(g, q) for g in gens)


def _compare(key, lhs, rhs, rechecks=()):
    if not ideals_equal(lhs, rhs):
        return IdentityCheck(key, "fail", "oracle sides differ")
    for gens, X, Y in rechecks:
        if not _members(gens, X, Y):
            return IdentityCheck(key, "fail", "standard-basis membership disagrees with the oracle")
    return IdentityCheck(key, "pass", "oracle and standard-basis routes agree")


def check_identities(I, J, H, L, decomps):
    """`decomps` maps "I", "J", "H", "L" to primary decompositions."""
    dI, dJ, dH, dL = (decomps[k] for k in "IJHL")
    report = IdentityReport()
    add = report.checks.append

    def gens(ideal):
        return groebner_basis(ideal)

    bIJ_dec = beta_decomposition(dI, J)
    bIJ = bIJ_dec.ideal
    bIL_dec = beta_decomposition(dI, L)

    # (1)
    try:
        radJ = radical_of_decomposition(dJ).ideal
    except DecompositionError as exc:
        add(IdentityCheck("1", "skipped", str(exc)))
    else:
        lhs = beta_oracle(dI, radJ)
        add(_compare("1", lhs, bIJ, [(gens(bIJ), I, radJ), (gens(lhs), I, J)]))

    # (2)
    try:
        radI_dec = radical_of_decomposition(dI)
        rad_bIJ = radical_of_decomposition(bIJ_dec).ideal
    except DecompositionError as exc:
        add(IdentityCheck("2", "skipped", str(exc)))
    else:
        lhs = beta_oracle(radI_dec, J)
        check = _compare("2", lhs, rad_bIJ, [(gens(rad_bIJ), radI_dec.ideal, J)])
        if check.status == "pass":
            q = lift(I, J)
            if not all(extraction_radical_membership(g, q) for g in gens(lhs)):
                check = IdentityCheck("2", "fail", "radical membership disagrees with the oracle")
        add(check)

    # (3)
    dIH = dI.union(dH)
    lhs = beta_oracle(dIH, J)
    rhs = ideal_intersection(bIJ, beta_oracle(dH, J))
    add(_compare("3", lhs, rhs, [(gens(rhs), dIH.ideal, J), (gens(lhs), I, J), (gens(lhs), H, J)]))

    # (4)
    JL = ideal_intersection(J, L)
    lhs = beta_oracle(dI, JL)
    rhs = ideal_intersection(bIJ, bIL_dec.ideal)
    add(_compare("4", lhs, rhs, [(gens(rhs), I, JL), (gens(lhs), I, J), (gens(lhs), I, L)]))

    # (5)
    lhs = beta_oracle(bIJ_dec, J)
    add(_compare("5", lhs, bIJ, [(gens(bIJ), bIJ, J)]))

    # (6)
    bJI = beta_oracle(dJ, I)
    lhs = beta_oracle(dI, bJI)
    add(_compare("6", lhs, bIJ, [(gens(bIJ), I, bJI), (gens(lhs), I, J)]))

    # (7)
    lhs = beta_oracle(bIJ_dec, L)
    rhs = beta_oracle(bIL_dec, J)
    add(_compare("7", lhs, rhs, [(gens(rhs), bIJ, L), (gens(lhs), bIL_dec.ideal, J)]))

    add(check_lift_intersection(I, H, J))
    return report


def check_lift_intersection(I, H, J):
    """(I∩H)' versus I'∩H' in the lifted ring, by reduced Gröbner bases."""
    lhs = lift(ideal_intersection(I, H), J).lifted_ideal
    rhs = ideal_intersection(lift(I, J).lifted_ideal, lift(H, J).lifted_ideal)
    if ideals_equal(lhs, rhs):
        return IdentityCheck("lift", "pass", "reduced Gröbner bases agree")
    return IdentityCheck("lift", "fail", "reduced Gröbner bases differ")
