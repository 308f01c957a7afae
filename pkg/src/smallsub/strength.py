"""Strength of forms: exhaustive collapse search and sound bounds.

A *k-collapse* of a form F is an expression F = sum G_i H_i with at
most k pairs of forms of strictly smaller positive degree, equivalently
membership of F in an ideal generated by k such forms.  The *strength*
of F is the least k with a (k+1)-collapse but no k-collapse; nonzero
linear forms have strength +infinity.

Exhaustive search runs over small prime fields only and enumerates
candidate generator tuples up to scalar rescaling, testing membership
by Groebner normal form; a witness, when found, is reconstructed by
lifting the tracked reduction and is verified exactly on construction.
A "no collapse" answer is reported only when the enumeration finished;
running out of budget is a distinguished outcome.  Exhaustive results
are tagged as specific to the ground field, while the Jacobian height
bound is stable under field extension.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations, product
from math import ceil, inf

from .budget import Budget, BudgetExceededError, Counter, DEFAULT_BUDGET
from .fields import CoefficientField
from .groebner import Ideal, groebner_basis, membership_cofactors, normal_form
from .poly import Form, Monomial, Polynomial, as_form, gradient, grevlex_key

#: Hard cap on a single enumeration class (forms of one degree, up to scalar).
ENUMERATION_DOMAIN_CAP = 200_000


@dataclass(frozen=True)
class CollapseWitness:
    """An exact equation F = sum G_i H_i with lower-degree factors."""

    target: Form
    pairs: tuple[tuple[Form, Form], ...]

    def __post_init__(self):
        d = self.target.degree
        total = Polynomial.zero(self.target.nvars, self.target.field)
        for g, h in self.pairs:
            if not (1 <= g.degree < d and 1 <= h.degree < d):
                raise ValueError("witness factors must have smaller positive degree")
            total = total + g.poly * h.poly
        if total != self.target.poly:
            raise ValueError("witness equation does not reproduce the target form")

    @property
    def k(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class StrengthReport:
    """Strength bounds for one form; +infinity is represented by math.inf.

    ``lower``/``exact`` from exhaustive search hold over the ground field
    only (``field_caveat``); the witness behind ``upper`` and the optional
    ``jacobian_lower`` stay valid over every field extension.
    """

    lower: int | float
    upper: int | float
    exact: int | float | None = None
    field_caveat: bool = False
    witness: CollapseWitness | None = None
    jacobian_lower: int | float | None = None
    exhausted: bool = False

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.exact is not None and not (self.lower == self.upper == self.exact):
            raise ValueError("an exact value forces lower = upper = exact")


def _monomials_of_degree(nvars: int, degree: int) -> list[Monomial]:
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, degree - first):
            out.append((first,) + rest)
    return out


@lru_cache(maxsize=None)
def _form_classes(nvars: int, degree: int, p: int) -> tuple[Form, ...]:
    """All nonzero degree-d forms up to scalar, in a fixed deterministic order."""
    monos = sorted(_monomials_of_degree(nvars, degree), key=grevlex_key, reverse=True)
    m = len(monos)
    count = (p ** m - 1) // (p - 1)
    if count > ENUMERATION_DOMAIN_CAP:
        raise BudgetExceededError("collapse enumeration domain", ENUMERATION_DOMAIN_CAP)
    field = CoefficientField(p)
    out = []
    for lead in range(m):
        for tail in product(range(p), repeat=m - lead - 1):
            terms = {monos[lead]: 1}
            for mono, c in zip(monos[lead + 1:], tail):
                if c:
                    terms[mono] = c
            out.append(Form(Polynomial(nvars, field, terms)))
    return tuple(out)


def enumerate_forms(nvars: int, degree: int, field: CoefficientField):
    """Iterate the projective classes of degree-d forms over a prime field."""
    if field.p is None:
        raise ValueError("exhaustive enumeration needs a finite prime field")
    return iter(_form_classes(nvars, degree, field.p))


def _degree_profiles(size: int, max_degree: int):
    """Nondecreasing tuples in [1, max_degree]^size."""
    def rec(start: int, remaining: int):
        if remaining == 0:
            yield ()
            return
        for d in range(start, max_degree + 1):
            for rest in rec(d, remaining - 1):
                yield (d,) + rest
    yield from rec(1, size)


def _lift_witness(target: Form, gens: list[Form],
                  budget: Budget | None) -> CollapseWitness:
    cofactors = membership_cofactors(target.poly, [g.poly for g in gens],
                                     budget=budget)
    if cofactors is None:
        raise AssertionError("membership vanished during witness lifting")
    pairs = []
    d = target.degree
    for g, c in zip(gens, cofactors):
        h = c.homogeneous_component(d - g.degree)
        if not h.is_zero():
            pairs.append((g, Form(h)))
    return CollapseWitness(target, tuple(pairs))


def find_collapse(target: Form | Polynomial, k: int,
                  budget: Budget | None = None) -> CollapseWitness | None:
    """Search exhaustively for a collapse with at most k pairs.

    Returns the first witness in a fixed enumeration order (smallest pair
    count first), or None only when the whole enumeration completed.
    """
    target = as_form(target)
    budget = budget or DEFAULT_BUDGET
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0 or target.degree == 1:
        return None
    if target.field.p is None:
        raise ValueError("exhaustive collapse search needs a finite prime field")
    counter = Counter("collapse candidates", budget.max_candidates)
    nvars, d = target.nvars, target.degree

    def tuples(groups: list[tuple[int, int]], idx: int):
        # lazy product of per-degree combinations; never materialized
        if idx == len(groups):
            yield ()
            return
        deg, mult = groups[idx]
        classes = _form_classes(nvars, deg, target.field.p)
        for combo in combinations(classes, mult):
            for rest in tuples(groups, idx + 1):
                yield combo + rest

    for size in range(1, k + 1):
        for profile in _degree_profiles(size, d - 1):
            grouped: dict[int, int] = {}
            for deg in profile:
                grouped[deg] = grouped.get(deg, 0) + 1
            for gens in tuples(sorted(grouped.items()), 0):
                counter.tick()
                gb = groebner_basis([g.poly for g in gens], budget=budget)
                if normal_form(target.poly, gb).is_zero():
                    return _lift_witness(target, list(gens), budget)
    return None


def strength_exact(target: Form | Polynomial, budget: Budget | None = None,
                   max_k: int | None = None) -> StrengthReport:
    """Exact strength by exhaustive search over a small prime field.

    Linear forms report +infinity.  If the budget runs out, the report
    degrades honestly to the interval established so far.
    """
    target = as_form(target)
    budget = budget or DEFAULT_BUDGET
    if target.degree == 1:
        return StrengthReport(lower=inf, upper=inf, exact=inf)
    if target.field.p is None:
        raise ValueError("exact strength needs a finite prime field")
    cap = max_k if max_k is not None else target.nvars
    completed = 0
    for size in range(1, cap + 1):
        try:
            witness = find_collapse(target, size, budget)
        except BudgetExceededError:
            # sizes <= completed were ruled out exhaustively
            return StrengthReport(lower=completed, upper=inf,
                                  field_caveat=completed > 0, exhausted=True)
        if witness is not None:
            value = witness.k - 1
            return StrengthReport(lower=value, upper=value, exact=value,
                                  field_caveat=value > 0, witness=witness)
        completed = size
    return StrengthReport(lower=completed, upper=inf, field_caveat=True)


def strength_lower_bound(target: Form | Polynomial,
                         budget: Budget | None = None) -> int | float:
    """Extension-stable lower bound: ceil(h/2) - 1 for h the height of the
    ideal generated by F together with its partial derivatives."""
    target = as_form(target)
    gens = [target.poly] + [g for g in gradient(target.poly) if not g.is_zero()]
    h = Ideal(gens, target.nvars, target.field).height(budget)
    if h == inf:
        return inf
    return ceil(h / 2) - 1


def full_report(target: Form | Polynomial, budget: Budget | None = None,
                max_k: int | None = None) -> StrengthReport:
    """Exhaustive result combined with the Jacobian certificate."""
    report = strength_exact(target, budget, max_k)
    jac = strength_lower_bound(target, budget)
    return replace(report, jacobian_lower=jac)
