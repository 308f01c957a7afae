"""Regular-sequence and Serre R_eta certificates via Jacobian heights.

A sequence of forms of positive degree is regular exactly when the
ideal it generates has height equal to its length.  For a regular
sequence of c forms, the singular locus of the complete intersection is
cut out by the forms together with the c x c minors of their Jacobian
matrix; its codimension inside the quotient is the measured height
minus c.  R_eta holds when that codimension is at least eta + 1.

Heights are stable under field extension, so certificates computed over
F_p are valid over the algebraic closure.  In small characteristic the
Jacobian criterion may overstate the singular locus (inseparability),
making a PASS verdict the reliable side; reports carry that caveat.

The distinct-degree minors check is the randomized harness for the
height inequality on matrices whose rows are forms of mutually distinct
degrees: with h rows, each spanning a row ideal of height at least b,
the maximal minors generate an ideal of height at least b - h + 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import inf
from typing import Sequence

from .budget import Budget
from .groebner import Ideal
from .poly import Form, Polynomial, as_form, jacobian


@dataclass(frozen=True)
class RetaCertificate:
    """Verdict and audit trail for one R_eta check."""

    forms: tuple[Form, ...]
    eta: int
    codim_singular: int
    verdict: bool
    heights: dict
    smooth: bool = False
    note: str = ""

    def __post_init__(self):
        if self.verdict != (self.codim_singular >= self.eta + 1):
            raise ValueError("verdict must equal codim_singular >= eta + 1")


def _ideal_of(forms: Sequence[Form], extra: Sequence[Polynomial] = ()) -> Ideal:
    gens = [f.poly for f in forms] + list(extra)
    return Ideal(gens, forms[0].nvars, forms[0].field)


def is_regular_sequence(forms: Sequence[Form | Polynomial],
                        budget: Budget | None = None) -> bool:
    """Height criterion: homogeneous forms of positive degree are a regular
    sequence iff their ideal has height equal to their number."""
    forms = [as_form(f) for f in forms]
    if not forms:
        raise ValueError("need at least one form")
    return _ideal_of(forms).height(budget) == len(forms)


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant by Laplace expansion along the first row."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return matrix[0][0]
    first = matrix[0]
    total = None
    for j, entry in enumerate(first):
        if entry.is_zero():
            continue
        minor = [[row[c] for c in range(n) if c != j] for row in matrix[1:]]
        term = entry * determinant(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        total = Polynomial.zero(first[0].nvars, first[0].field)
    return total


def minors_ideal(matrix: Sequence[Sequence[Polynomial]], size: int) -> Ideal:
    """Ideal generated by all size x size minors."""
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    if not 1 <= size <= min(rows, cols):
        raise ValueError(f"minor size {size} out of range for {rows}x{cols}")
    sample = matrix[0][0]
    gens = []
    for rsel in combinations(range(rows), size):
        for csel in combinations(range(cols), size):
            sub = [[matrix[r][c] for c in csel] for r in rsel]
            gens.append(determinant(sub))
    return Ideal(gens, sample.nvars, sample.field)


def singular_locus_codim(forms: Sequence[Form | Polynomial],
                         budget: Budget | None = None) -> int:
    """Codimension of the singular locus inside the complete intersection.

    Requires a regular sequence of c forms; measures the height of the
    ideal of the forms plus the size-c Jacobian minors and subtracts c.
    A unit minors ideal means a smooth quotient; the codimension is then
    capped at the quotient dimension N - c.
    """
    forms = [as_form(f) for f in forms]
    if not is_regular_sequence(forms, budget):
        raise ValueError("forms are not a regular sequence")
    c = len(forms)
    nvars = forms[0].nvars
    jac = jacobian(forms)
    minors = minors_ideal(jac, c)
    total = _ideal_of(forms, minors.generators)
    h = total.height(budget)
    if h == inf:
        return nvars - c
    return h - c


def check_reta(forms: Sequence[Form | Polynomial], eta: int,
               budget: Budget | None = None) -> RetaCertificate:
    """Certify Serre's R_eta for the quotient by a regular sequence."""
    if eta < 0:
        raise ValueError("eta must be nonnegative")
    forms = tuple(as_form(f) for f in forms)
    c = len(forms)
    nvars = forms[0].nvars
    forms_ideal = _ideal_of(forms)
    jac = jacobian(forms)
    minors = minors_ideal(jac, c)
    if forms_ideal.height(budget) != c:
        raise ValueError("forms are not a regular sequence")
    total = _ideal_of(forms, minors.generators)
    h = total.height(budget)
    smooth = h == inf
    codim = (nvars - c) if smooth else (h - c)
    p = forms[0].field.characteristic
    note = ("height certificates are extension-stable; in characteristic "
            f"{p} the Jacobian locus may overstate singularity, so PASS "
            "is the reliable side") if p else ""
    return RetaCertificate(
        forms=forms, eta=eta, codim_singular=codim,
        verdict=codim >= eta + 1,
        heights={"forms": c, "forms_plus_minors": h},
        smooth=smooth, note=note)


def minors_height_check(matrix: Sequence[Sequence[Polynomial]],
                        budget: Budget | None = None) -> bool:
    """Check height(maximal minors) >= b - h + 1 for distinct-degree rows.

    Row i must be homogeneous of one degree d_i, all d_i mutually
    distinct (a scalar row counts as degree 0 and must be nonzero, its
    row ideal height reading +infinity); b is the minimum row-ideal
    height.  The inequality is a theorem, so this harness returns True
    on every valid input unless the implementation is wrong.
    """
    rows = len(matrix)
    if rows == 0:
        raise ValueError("empty matrix")
    sample = matrix[0][0]
    degrees = []
    for row in matrix:
        degs = {e.total_degree() for e in row if not e.is_zero()}
        if len(degs) > 1:
            raise ValueError("row entries must share one degree")
        if any(not e.is_homogeneous() for e in row):
            raise ValueError("row entries must be homogeneous")
        degrees.append(degs.pop() if degs else 0)
    if len(set(degrees)) != rows:
        raise ValueError("row degrees must be mutually distinct")
    b: int | float = inf
    for row in matrix:
        gens = [e for e in row if not e.is_zero()]
        if not gens:
            b = min(b, 0)
            continue
        row_ideal = Ideal(gens, sample.nvars, sample.field)
        b = min(b, row_ideal.height(budget))
    size = min(rows, len(matrix[0]))
    minors = minors_ideal(matrix, size)
    if minors.is_zero():
        lhs: int | float = 0
    else:
        lhs = minors.height(budget)
    return lhs >= b - rows + 1
