"""Buchberger engine and the classical ideal calculus.

One engine serves ideals and submodules of free modules: an element is
a dict mapping module terms ``(component, exponent-tuple)`` to nonzero
raw coefficients, and an ideal element simply lives in component 0.
Orders are key-based: a term order supplies a sort key for ring
monomials and is extended position-over-term to modules; Schreyer keys
for resolutions are built on top of these (see :mod:`smallsub.modules`).

The pair loop uses the normal selection strategy (smallest lcm first)
with the coprimality criterion (ideal case only) and the treated-pair
chain criterion.  All runs are budgeted: exceeding the configured pair
or degree cap raises, it never degrades into a wrong answer.
"""

from __future__ import annotations

import heapq
from itertools import combinations
from math import inf
from typing import Callable, Iterable, Sequence

from .budget import Budget, BudgetExceededError, Counter, DEFAULT_BUDGET
from .fields import CoefficientField
from .poly import Monomial, Polynomial, grevlex_key, mono_degree

Term = tuple[int, Monomial]
VecDict = dict[Term, object]


class TermOrder:
    """A monomial order on ring monomials: grevlex, lex, or a block
    elimination order that eliminates the first ``elim`` variables."""

    __slots__ = ("kind", "elim")

    def __init__(self, kind: str = "grevlex", elim: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order kind {kind!r}")
        if kind == "elim" and elim < 1:
            raise ValueError("elimination order needs a positive block size")
        self.kind = kind
        self.elim = elim

    def key(self, mono: Monomial):
        if self.kind == "grevlex":
            return grevlex_key(mono)
        if self.kind == "lex":
            return mono
        k = self.elim
        return (grevlex_key(mono[:k]), grevlex_key(mono[k:]))

    def signature(self):
        return (self.kind, self.elim)

    def __repr__(self):
        if self.kind == "elim":
            return f"elim({self.elim})"
        return self.kind


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


def elimination_order(k: int) -> TermOrder:
    return TermOrder("elim", k)


def pot_key(order: TermOrder) -> Callable[[Term], object]:
    """Position-over-term extension: e_0 > e_1 > ..., ties by the ring order."""
    ring_key = order.key

    def key(term: Term):
        comp, mono = term
        return (-comp, ring_key(mono))

    return key


# ----- raw engine -----


def _scale_vec(vec: VecDict, factor, p) -> VecDict:
    if p:
        return {t: c * factor % p for t, c in vec.items()}
    return {t: c * factor for t, c in vec.items()}


def _sub_scaled_tail(work: VecDict, tail, umono: Monomial, factor, p):
    """work -= factor * x^umono * tail, in place."""
    for (comp, mono), c in tail:
        t = (comp, tuple(a + b for a, b in zip(mono, umono)))
        v = work.get(t, 0) - factor * c
        if p:
            v %= p
        if v:
            work[t] = v
        elif t in work:
            del work[t]


def normal_form_vec(vec: VecDict, basis: Sequence[tuple], keyf, p,
                    track: bool = False):
    """Full normal form against preprocessed monic divisors.

    ``basis`` entries are ``(lt_comp, lt_mono, tail_items)``; divisors are
    monic.  Returns the remainder, plus ``(index, mono, coeff)`` reduction
    records when tracking.
    """
    work = dict(vec)
    rem: VecDict = {}
    records = [] if track else None
    while work:
        t = max(work, key=keyf)
        c = work.pop(t)
        comp, mono = t
        hit = -1
        for idx, (ltc, ltm, _tail) in enumerate(basis):
            if ltc == comp and all(a <= b for a, b in zip(ltm, mono)):
                hit = idx
                break
        if hit < 0:
            rem[t] = c
            continue
        ltc, ltm, tail = basis[hit]
        umono = tuple(a - b for a, b in zip(mono, ltm))
        _sub_scaled_tail(work, tail, umono, c, p)
        if track:
            records.append((hit, umono, c))
    return (rem, records) if track else rem


def _prep(vec: VecDict, keyf):
    lt = max(vec, key=keyf)
    tail = [(t, c) for t, c in vec.items() if t != lt]
    return (lt[0], lt[1], tail)


def _make_monic(vec: VecDict, keyf, p, field: CoefficientField) -> tuple[VecDict, object]:
    lt = max(vec, key=keyf)
    lc = vec[lt]
    if lc == field.one:
        return vec, field.one
    inv = field.inv(lc)
    return _scale_vec(vec, inv, p), inv


def buchberger(vectors: Sequence[VecDict], keyf, field: CoefficientField,
               budget: Budget | None = None, rank1: bool = False,
               track: bool = False, stats: dict | None = None):
    """Compute a (non-reduced) monic Groebner basis of the span.

    With ``track=True`` also returns, for each basis element, its
    expression over the input vectors as a VecDict keyed by input index.
    A ``stats`` dict, when given, receives pair/reduction counters.
    """
    budget = budget or DEFAULT_BUDGET
    p = field.p
    pair_counter = Counter("groebner pairs", budget.max_pairs)
    basis: list[VecDict] = []
    prepped: list[tuple] = []
    exprs: list[VecDict] = []
    heap: list = []
    treated: set[frozenset] = set()
    zero_mono: Monomial | None = None

    def push_pairs(new_idx: int):
        ltc, ltm, _ = prepped[new_idx]
        for j in range(new_idx):
            jc, jm, _ = prepped[j]
            if jc != ltc:
                continue
            lcm = tuple(max(a, b) for a, b in zip(ltm, jm))
            heapq.heappush(heap, (keyf((ltc, lcm)), lcm, j, new_idx))

    def add(vec: VecDict, expr: VecDict | None):
        nonlocal zero_mono
        vec, inv = _make_monic(vec, keyf, p, field)
        basis.append(vec)
        prepped.append(_prep(vec, keyf))
        if track:
            exprs.append(_scale_vec(expr, inv, p) if inv != field.one else expr)
        push_pairs(len(basis) - 1)

    for i, vec in enumerate(vectors):
        if not vec:
            continue
        if zero_mono is None:
            zero_mono = (0,) * len(next(iter(vec))[1])
        expr = {(i, zero_mono): field.one} if track else None
        if track:
            rem, records = normal_form_vec(vec, prepped, keyf, p, track=True)
            for idx, umono, factor in records:
                _sub_scaled_tail(expr, list(exprs[idx].items()), umono, factor, p)
        else:
            rem = normal_form_vec(vec, prepped, keyf, p)
        if rem:
            add(rem, expr)

    while heap:
        _, lcm, i, j = heapq.heappop(heap)
        pair = frozenset((i, j))
        if pair in treated:
            continue
        treated.add(pair)
        if budget.max_degree is not None and mono_degree(lcm) > budget.max_degree:
            raise BudgetExceededError("groebner lcm degree", budget.max_degree)
        pair_counter.tick()
        ic, im, _ = prepped[i]
        jc, jm, _ = prepped[j]
        if rank1 and tuple(a + b for a, b in zip(im, jm)) == lcm:
            continue  # coprime leading monomials: S-pair reduces to zero
        skip = False
        for k in range(len(basis)):
            if k == i or k == j:
                continue
            kc, km, _ = prepped[k]
            if kc == ic and all(a <= b for a, b in zip(km, lcm)) \
                    and frozenset((i, k)) in treated and frozenset((k, j)) in treated:
                skip = True
                break
        if skip:
            continue
        ui = tuple(a - b for a, b in zip(lcm, im))
        uj = tuple(a - b for a, b in zip(lcm, jm))
        spair: VecDict = {}
        _sub_scaled_tail(spair, list(basis[i].items()), ui,
                         field.neg(field.one), p)
        _sub_scaled_tail(spair, list(basis[j].items()), uj, field.one, p)
        if track:
            expr: VecDict = {}
            _sub_scaled_tail(expr, list(exprs[i].items()), ui, field.neg(field.one), p)
            _sub_scaled_tail(expr, list(exprs[j].items()), uj, field.one, p)
            rem, records = normal_form_vec(spair, prepped, keyf, p, track=True)
            for idx, umono, factor in records:
                _sub_scaled_tail(expr, list(exprs[idx].items()), umono, factor, p)
        else:
            rem = normal_form_vec(spair, prepped, keyf, p)
            expr = None
        if rem:
            add(rem, expr)

    if stats is not None:
        stats["pairs_processed"] = pair_counter.used
        stats["basis_size"] = len(basis)
    if track:
        return basis, exprs
    return basis


def autoreduce(basis: Sequence[VecDict], keyf, field: CoefficientField) -> list[VecDict]:
    """Interreduce a Groebner basis into the unique reduced monic basis,
    sorted with the largest leading term first."""
    p = field.p
    elems = sorted((dict(v) for v in basis if v),
                   key=lambda v: keyf(max(v, key=keyf)))
    minimal: list[VecDict] = []
    lts: list[Term] = []
    for vec in elems:
        lt = max(vec, key=keyf)
        comp, mono = lt
        if any(c == comp and all(a <= b for a, b in zip(m, mono))
               for c, m in lts):
            continue
        minimal.append(vec)
        lts.append(lt)
    reduced = []
    for i, vec in enumerate(minimal):
        others = [_prep(v, keyf) for j, v in enumerate(minimal) if j != i]
        rem = normal_form_vec(vec, others, keyf, p)
        rem, _ = _make_monic(rem, keyf, p, field)
        reduced.append(rem)
    reduced.sort(key=lambda v: keyf(max(v, key=keyf)), reverse=True)
    return reduced


# ----- Polynomial-level wrappers -----


def _to_vec(f: Polynomial) -> VecDict:
    return {(0, m): c for m, c in f.terms.items()}


def _from_vec(vec: VecDict, nvars: int, field: CoefficientField) -> Polynomial:
    return Polynomial(nvars, field, {m: c for (_, m), c in vec.items()})


def _ambient(gens: Sequence[Polynomial]):
    if not gens:
        raise ValueError("need at least one polynomial to infer the ambient ring")
    nvars, field = gens[0].nvars, gens[0].field
    for g in gens[1:]:
        if g.nvars != nvars or g.field != field:
            raise ValueError("generators live in different ambient rings")
    return nvars, field


def groebner_basis(gens: Sequence[Polynomial], order: TermOrder = GREVLEX,
                   budget: Budget | None = None,
                   stats: dict | None = None) -> list[Polynomial]:
    """Reduced monic Groebner basis (unique for the order) of an ideal."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    nvars, field = _ambient(gens)
    keyf = pot_key(order)
    basis = buchberger([_to_vec(g) for g in gens], keyf, field,
                       budget=budget, rank1=True, stats=stats)
    reduced = autoreduce(basis, keyf, field)
    if stats is not None:
        stats["reduced_basis_size"] = len(reduced)
    return [_from_vec(v, nvars, field) for v in reduced]


def normal_form(f: Polynomial, basis: Sequence[Polynomial],
                order: TermOrder = GREVLEX) -> Polynomial:
    """Remainder of f on full division by a (Groebner) basis."""
    if f.is_zero() or not basis:
        return f
    keyf = pot_key(order)
    field = f.field
    prepped = []
    for g in basis:
        vec, _ = _make_monic(_to_vec(g), keyf, field.p, field)
        prepped.append(_prep(vec, keyf))
    rem = normal_form_vec(_to_vec(f), prepped, keyf, field.p)
    return _from_vec(rem, f.nvars, field)


def membership_cofactors(f: Polynomial, gens: Sequence[Polynomial],
                         order: TermOrder = GREVLEX,
                         budget: Budget | None = None):
    """Cofactors c_i with f = sum c_i * gens[i], or None when f is outside.

    Uses a tracked Buchberger run and a tracked division, so the witness
    is exact by construction.
    """
    gens = list(gens)
    nonzero = [(i, g) for i, g in enumerate(gens) if not g.is_zero()]
    if not nonzero:
        return None
    nvars, field = _ambient([g for _, g in nonzero])
    keyf = pot_key(order)
    p = field.p
    basis, exprs = buchberger([_to_vec(g) for _, g in nonzero], keyf, field,
                              budget=budget, rank1=True, track=True)
    prepped = [_prep(v, keyf) for v in basis]
    rem, records = normal_form_vec(_to_vec(f), prepped, keyf, p, track=True)
    if rem:
        return None
    acc: VecDict = {}
    for idx, umono, factor in records:
        _sub_scaled_tail(acc, list(exprs[idx].items()), umono,
                         field.neg(factor) if p is None else -factor % p, p)
    cofactors = [Polynomial.zero(nvars, field) for _ in gens]
    per_gen: dict[int, dict] = {}
    for (gi, mono), c in acc.items():
        per_gen.setdefault(gi, {})[mono] = c
    for gi, terms in per_gen.items():
        original_index = nonzero[gi][0]
        cofactors[original_index] = Polynomial(nvars, field, terms)
    return cofactors


def exact_divide(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient f / g for an exact single-divisor division."""
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return f
    field = f.field
    keyf = pot_key(GREVLEX)
    vec, inv = _make_monic(_to_vec(g), keyf, field.p, field)
    prepped = [_prep(vec, keyf)]
    rem, records = normal_form_vec(_to_vec(f), prepped, keyf, field.p, track=True)
    if rem:
        raise ValueError("division is not exact")
    terms: dict[Monomial, object] = {}
    p = field.p
    for _, umono, factor in records:
        c = factor * inv if inv != field.one else factor
        if p:
            c %= p
        terms[umono] = terms.get(umono, 0) + c
    return Polynomial(f.nvars, field, terms)


# ----- the ideal calculus -----


class Ideal:
    """An ideal with cached reduced Groebner bases (write-once per order)."""

    __slots__ = ("generators", "nvars", "field", "_gb")

    def __init__(self, generators: Iterable[Polynomial], nvars: int | None = None,
                 field: CoefficientField | None = None):
        gens = [g.poly if hasattr(g, "poly") else g for g in generators]
        gens = [g for g in gens if not g.is_zero()]
        if gens:
            ambient = _ambient(gens)
            if nvars is not None and nvars != ambient[0]:
                raise ValueError("explicit nvars disagrees with the generators")
            nvars, field = ambient
        elif nvars is None or field is None:
            raise ValueError("the zero ideal needs an explicit ambient ring")
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_gb", {})

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    def groebner_basis(self, order: TermOrder = GREVLEX,
                       budget: Budget | None = None) -> list[Polynomial]:
        sig = order.signature()
        cached = self._gb.get(sig)
        if cached is None:
            cached = tuple(groebner_basis(self.generators, order, budget))
            self._gb[sig] = cached  # idempotent write-once memo
        return list(cached)

    def normal_form(self, f: Polynomial, order: TermOrder = GREVLEX,
                    budget: Budget | None = None) -> Polynomial:
        return normal_form(f, self.groebner_basis(order, budget), order)

    def contains(self, f: Polynomial, budget: Budget | None = None) -> bool:
        f = f.poly if hasattr(f, "poly") else f
        return self.normal_form(f, budget=budget).is_zero()

    def contains_ideal(self, other: "Ideal", budget: Budget | None = None) -> bool:
        return all(self.contains(g, budget) for g in other.generators)

    def equals(self, other: "Ideal", budget: Budget | None = None) -> bool:
        return self.contains_ideal(other, budget) and other.contains_ideal(self, budget)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self, budget: Budget | None = None) -> bool:
        gb = self.groebner_basis(budget=budget)
        return any(g.is_constant() and not g.is_zero() for g in gb)

    def dimension(self, budget: Budget | None = None) -> int:
        """Krull dimension of R/I; -1 for the unit ideal."""
        gb = self.groebner_basis(budget=budget)
        if any(g.is_constant() and not g.is_zero() for g in gb):
            return -1
        keyf = GREVLEX.key
        supports = []
        for g in gb:
            lt = max(g.terms, key=keyf)
            supports.append(frozenset(i for i, e in enumerate(lt) if e))
        supports = [s for s in supports if not any(t < s for t in supports)]
        n = self.nvars
        for size in range(n, 0, -1):
            for subset in combinations(range(n), size):
                chosen = set(subset)
                if not any(s <= chosen for s in supports):
                    return size
        return 0

    def height(self, budget: Budget | None = None) -> int | float:
        """Codimension; +inf exactly for the unit ideal."""
        dim = self.dimension(budget)
        if dim < 0:
            return inf
        return self.nvars - dim

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return Ideal(list(self.generators) + list(extra), self.nvars, self.field)

    # --- elimination-based operations ---

    def _tagged(self, flip: bool) -> list[Polynomial]:
        """Generators multiplied by t (or 1-t) in a ring with tag variable first."""
        out = []
        nv = self.nvars + 1
        for g in self.generators:
            shifted = Polynomial(nv, self.field,
                                 {(0,) + m: c for m, c in g.terms.items()})
            tagged = Polynomial(nv, self.field,
                                {(1,) + m: c for m, c in g.terms.items()})
            out.append(shifted - tagged if flip else tagged)
        return out

    def intersection(self, other: "Ideal", budget: Budget | None = None) -> "Ideal":
        """I cap J via a single tag variable and elimination."""
        if self.nvars != other.nvars or self.field != other.field:
            raise ValueError("ideals live in different ambient rings")
        if self.is_zero() or other.is_zero():
            return Ideal([], self.nvars, self.field)
        mixed = self._tagged(flip=False) + other._tagged(flip=True)
        gb = groebner_basis(mixed, elimination_order(1), budget)
        kept = [Polynomial(self.nvars, self.field,
                           {m[1:]: c for m, c in g.terms.items()})
                for g in gb if all(m[0] == 0 for m in g.terms)]
        return Ideal(kept, self.nvars, self.field)

    def colon(self, other, budget: Budget | None = None) -> "Ideal":
        """I : J, computed per generator of J via intersection and division."""
        if isinstance(other, Polynomial):
            other = Ideal([other], self.nvars, self.field)
        if other.is_zero():
            one = Polynomial.constant(1, self.nvars, self.field)
            return Ideal([one], self.nvars, self.field)
        result: Ideal | None = None
        for g in other.generators:
            meet = self.intersection(Ideal([g], self.nvars, self.field), budget)
            part = Ideal([exact_divide(h, g) for h in meet.generators],
                         self.nvars, self.field)
            result = part if result is None else result.intersection(part, budget)
        return result

    def saturation(self, f: Polynomial, budget: Budget | None = None) -> "Ideal":
        """I : f^infinity by iterated colon until the chain stabilizes."""
        if f.is_zero():
            raise ValueError("cannot saturate by zero")
        budget = budget or DEFAULT_BUDGET
        current = self
        for _ in range(budget.max_steps):
            nxt = current.colon(f, budget)
            if current.contains_ideal(nxt, budget):
                return current
            current = nxt
        raise BudgetExceededError("saturation rounds", budget.max_steps)

    def __repr__(self):
        inside = "; ".join(repr(g) for g in self.generators) or "0"
        return f"Ideal({inside})"


# ----- spec-level operation names -----


def ideal_dimension(ideal: Ideal, budget: Budget | None = None) -> int:
    return ideal.dimension(budget)


def height(ideal: Ideal, budget: Budget | None = None) -> int | float:
    return ideal.height(budget)


def colon_ideal(numerator: Ideal, denominator: Ideal,
                budget: Budget | None = None) -> Ideal:
    return numerator.colon(denominator, budget)


def intersection(left: Ideal, right: Ideal, budget: Budget | None = None) -> Ideal:
    return left.intersection(right, budget)


def saturation(ideal: Ideal, f: Polynomial, budget: Budget | None = None) -> Ideal:
    return ideal.saturation(f, budget)


def leading_form_ideal(gens: Sequence[Polynomial],
                       budget: Budget | None = None) -> Ideal:
    """Ideal of top-degree forms of all elements of (gens).

    Pipeline: homogenize each generator with a fresh last variable,
    saturate by that variable, then set it to zero.
    """
    from .poly import homogenize, set_last_variable_zero
    gens = [g.poly if hasattr(g, "poly") else g for g in gens]
    if not gens or any(g.is_zero() for g in gens):
        raise ValueError("generators must be nonzero")
    nvars, field = _ambient(gens)
    lifted = [homogenize(g).poly for g in gens]
    tag = Polynomial.variable(nvars, nvars + 1, field)
    saturated = Ideal(lifted, nvars + 1, field).saturation(tag, budget)
    dropped = [set_last_variable_zero(g)
               for g in saturated.groebner_basis(budget=budget)]
    return Ideal([g for g in dropped if not g.is_zero()], nvars, field)
