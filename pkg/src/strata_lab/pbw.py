"""Rewriting engine for presentations with ordered generators.

A presentation fixes a generator order and, for every descending pair
(hi, lo), a rule  x_hi * x_lo = swap * x_lo * x_hi + tail  whose swap
scalar is a unit monomial and whose tail is already a combination of
ordered monomials.  Elements are sparse maps from exponent vectors to
coefficients; reduction repeatedly rewrites the leftmost descending
adjacent pair of letters, with a fuel bound guaranteeing termination on
arbitrary user input.

Presentations and elements are immutable and normal_form/multiply are pure;
diamond_check reports are sorted by triple, so results do not depend on
evaluation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .coeff import Coefficient, ContextMismatch, ParamContext, UnitMonomial

DEFAULT_FUEL = 10 ** 6


class EngineError(Exception):
    """Base class for engine errors."""


class FuelExhausted(EngineError):
    """The rewrite budget ran out; the presentation is suspect."""


class NegativeExponent(EngineError):
    """An inverse letter was used on a non-invertible generator."""


class PresentationError(EngineError):
    """Structurally invalid presentation or element."""


class Element:
    """Sparse combination of ordered monomials: exponent tuple -> Coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean: dict[tuple[int, ...], Coefficient] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for exp, c in items:
                if not c:
                    continue
                exp = tuple(exp)
                if exp in clean:
                    c = clean[exp] + c
                    if c:
                        clean[exp] = c
                    else:
                        del clean[exp]
                else:
                    clean[exp] = c
        self.terms = clean

    @staticmethod
    def zero() -> "Element":
        return Element()

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for exp, c in other.terms.items():
            c0 = out.get(exp)
            c = c if c0 is None else c0 + c
            if c:
                out[exp] = c
            elif exp in out:
                del out[exp]
        res = Element.__new__(Element)
        res.terms = out
        return res

    def __neg__(self) -> "Element":
        res = Element.__new__(Element)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other: "Element") -> "Element":
        return self.__add__(other.__neg__())

    def scale(self, c) -> "Element":
        """Multiply every coefficient by c (a Coefficient or int)."""
        if isinstance(c, int):
            if c == 0:
                return Element()
            res = Element.__new__(Element)
            res.terms = {e: v * c for e, v in self.terms.items()}
            return res
        if not c:
            return Element()
        return Element({e: v * c for e, v in self.terms.items()})

    def scale_unit(self, unit: UnitMonomial, power: int = 1) -> "Element":
        res = Element.__new__(Element)
        res.terms = {e: v.scale_unit(unit, power) for e, v in self.terms.items()}
        return res

    def support(self):
        return self.terms.keys()

    def __repr__(self) -> str:
        return f"Element({len(self.terms)} terms)"


@dataclass(frozen=True)
class Rule:
    """x_hi * x_lo = swap * x_lo * x_hi + tail."""

    swap: UnitMonomial
    tail: Element = field(default_factory=Element)


class Presentation:
    """Ordered generators, descending-pair rules, a torus grading, and a fuel bound."""

    __slots__ = ("name", "context", "generators", "invertible", "rules",
                 "weights", "rank", "fuel", "_gen_index")

    def __init__(self, context: ParamContext, generators: Sequence[str],
                 rules: Mapping[tuple[int, int], Rule],
                 weights: Sequence[Sequence[int]] | None = None,
                 invertible=False, rank: int | None = None,
                 name: str = "A", fuel: int = DEFAULT_FUEL):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise PresentationError("duplicate generator names")
        n = len(gens)
        if isinstance(invertible, bool):
            inv = (invertible,) * n
        else:
            inv = tuple(bool(b) for b in invertible)
            if len(inv) != n:
                raise PresentationError("invertible flags do not match generators")
        if weights is None:
            weights = tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
        wts = tuple(tuple(int(x) for x in w) for w in weights)
        if len(wts) != n:
            raise PresentationError("one weight vector per generator required")
        if rank is None:
            rank = len(wts[0]) if n else 0
        if any(len(w) != rank for w in wts):
            raise PresentationError("weight vectors of unequal rank")
        if not isinstance(fuel, int) or fuel <= 0:
            raise PresentationError("fuel must be a positive integer")

        need = {(j, i) for j in range(n) for i in range(j)}
        got = set(rules)
        if got != need:
            missing = sorted(need - got)
            extra = sorted(got - need)
            raise PresentationError(f"rule pairs mismatch: missing {missing}, extra {extra}")
        width = len(context)
        for (j, i), rule in rules.items():
            if len(rule.swap.exponents) != width:
                raise PresentationError(f"swap for pair ({j},{i}) has wrong width")
            if rule.tail and (inv[i] or inv[j]):
                raise PresentationError(
                    f"pair ({j},{i}) touches an invertible generator but has a tail")
            for exp, c in rule.tail.terms.items():
                if len(exp) != n:
                    raise PresentationError(f"tail monomial width mismatch in pair ({j},{i})")
                if c.context != context:
                    raise ContextMismatch("tail coefficient over a different context")
                for t, e in enumerate(exp):
                    if e < 0 and not inv[t]:
                        raise PresentationError(
                            f"tail of pair ({j},{i}) uses a negative power of {gens[t]}")

        self.name = name
        self.context = context
        self.generators = gens
        self.invertible = inv
        self.rules = dict(rules)
        self.weights = wts
        self.rank = rank
        self.fuel = fuel
        self._gen_index = {g: k for k, g in enumerate(gens)}

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def gen_index(self, name: str) -> int:
        try:
            return self._gen_index[name]
        except KeyError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def with_fuel(self, fuel: int) -> "Presentation":
        return Presentation(self.context, self.generators, self.rules, self.weights,
                            self.invertible, self.rank, self.name, fuel)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.name == other.name and self.context == other.context
                and self.generators == other.generators
                and self.invertible == other.invertible
                and self.weights == other.weights
                and self.rules == other.rules)

    def __repr__(self) -> str:
        kind = "invertible" if all(self.invertible) and self.ngens else "polynomial"
        return f"Presentation({self.name}: {self.ngens} {kind} generators)"


# -- reduction core ---------------------------------------------------------


class _Fuel:
    __slots__ = ("left",)

    def __init__(self, budget: int):
        self.left = budget

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise FuelExhausted("rewrite budget exceeded")


def _letters(exp: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out = []
    for i, e in enumerate(exp):
        if e > 0:
            out.extend([(i, 1)] * e)
        elif e < 0:
            out.extend([(i, -1)] * (-e))
    return tuple(out)


def _reduce(p: Presentation, items, fuel: _Fuel) -> dict[tuple[int, ...], Coefficient]:
    n = p.ngens
    out: dict[tuple[int, ...], Coefficient] = {}
    stack = list(items)
    while stack:
        coeff, word = stack.pop()
        if not coeff:
            continue
        k = -1
        for t in range(len(word) - 1):
            if word[t][0] > word[t + 1][0]:
                k = t
                break
        if k < 0:
            exps = [0] * n
            for idx, s in word:
                exps[idx] += s
            for i, e in enumerate(exps):
                if e < 0 and not p.invertible[i]:
                    raise NegativeExponent(f"negative power of {p.generators[i]}")
            key = tuple(exps)
            c0 = out.get(key)
            c0 = coeff if c0 is None else c0 + coeff
            if c0:
                out[key] = c0
            elif key in out:
                del out[key]
            continue
        fuel.tick()
        (g, e), (h, f) = word[k], word[k + 1]
        rule = p.rules[(g, h)]
        head, rest = word[:k], word[k + 2:]
        if e == 1 and f == 1:
            stack.append((coeff.scale_unit(rule.swap), head + ((h, 1), (g, 1)) + rest))
            if rule.tail:
                for texp, tc in rule.tail.terms.items():
                    stack.append((coeff * tc, head + _letters(texp) + rest))
        else:
            if rule.tail:
                raise PresentationError(
                    f"inverse letter meets the tailful rule ({g},{h})")
            stack.append((coeff.scale_unit(rule.swap, e * f),
                          head + ((h, f), (g, e)) + rest))
    return out


def _word_letters(p: Presentation, word) -> list[tuple[int, int]]:
    letters: list[tuple[int, int]] = []
    for gen, e in word:
        idx = p.gen_index(gen) if isinstance(gen, str) else int(gen)
        if not 0 <= idx < p.ngens:
            raise PresentationError(f"generator index {idx} out of range")
        e = int(e)
        if e == 0:
            continue
        if e < 0 and not p.invertible[idx]:
            raise NegativeExponent(
                f"negative power of non-invertible generator {p.generators[idx]}")
        letters.extend([(idx, 1 if e > 0 else -1)] * abs(e))
    return letters


def normal_form(p: Presentation, word, scalar: Coefficient | None = None,
                fuel: int | None = None) -> Element:
    """Reduce a word (list of (generator, exponent) pairs) to its normal form."""
    letters = _word_letters(p, word)
    if scalar is None:
        scalar = Coefficient.one(p.context)
    elif scalar.context != p.context:
        raise ContextMismatch("scalar over a different context")
    res = _reduce(p, [(scalar, tuple(letters))], _Fuel(fuel or p.fuel))
    return Element(res)


def multiply(p: Presentation, a: Element, b: Element,
             fuel: int | None = None) -> Element:
    """Product of two normal-form elements, again in normal form."""
    budget = _Fuel(fuel or p.fuel)
    out: dict[tuple[int, ...], Coefficient] = {}
    pending = []
    for ea, ca in a.terms.items():
        if len(ea) != p.ngens:
            raise PresentationError("element width does not match presentation")
        la = _letters(ea)
        for eb, cb in b.terms.items():
            if len(eb) != p.ngens:
                raise PresentationError("element width does not match presentation")
            c = ca * cb
            if not c:
                continue
            lb = _letters(eb)
            if not la or not lb or la[-1][0] <= lb[0][0]:
                key = tuple(x + y for x, y in zip(ea, eb))
                c0 = out.get(key)
                c0 = c if c0 is None else c0 + c
                if c0:
                    out[key] = c0
                elif key in out:
                    del out[key]
            else:
                pending.append((c, la + lb))
    if pending:
        for key, c in _reduce(p, pending, budget).items():
            c0 = out.get(key)
            c0 = c if c0 is None else c0 + c
            if c0:
                out[key] = c0
            elif key in out:
                del out[key]
    return Element(out)


def power(p: Presentation, a: Element, k: int, fuel: int | None = None) -> Element:
    if k < 0:
        raise ValueError("negative powers of general elements are not defined")
    res = one(p)
    for _ in range(k):
        res = multiply(p, res, a, fuel=fuel)
    return res


# -- element constructors ----------------------------------------------------


def monomial(p: Presentation, exponents, coeff: Coefficient | None = None) -> Element:
    exp = tuple(int(e) for e in exponents)
    if len(exp) != p.ngens:
        raise PresentationError("exponent width does not match presentation")
    for i, e in enumerate(exp):
        if e < 0 and not p.invertible[i]:
            raise NegativeExponent(f"negative power of {p.generators[i]}")
    if coeff is None:
        coeff = Coefficient.one(p.context)
    return Element({exp: coeff})


def one(p: Presentation) -> Element:
    return monomial(p, (0,) * p.ngens)


def gen(p: Presentation, i) -> Element:
    idx = p.gen_index(i) if isinstance(i, str) else int(i)
    exp = [0] * p.ngens
    exp[idx] = 1
    return monomial(p, exp)


# -- monomial order and leading terms ----------------------------------------


def order_key(exp: Sequence[int]):
    """Graded order, ties broken exponent-lexicographically from the top generator."""
    return (sum(exp), tuple(reversed(exp)))


def leading_term(p: Presentation, a: Element) -> tuple[tuple[int, ...], Coefficient]:
    if not a:
        raise ValueError("zero element has no leading term")
    exp = max(a.terms, key=order_key)
    return exp, a.terms[exp]


# -- diamond lemma check ------------------------------------------------------


@dataclass
class OverlapReport:
    """Result of resolving one overlap word x_k x_j x_i (k > j > i) both ways."""

    triple: tuple[int, int, int]
    resolved: bool
    discrepancy: Element | None
    note: str = ""


def _first_step(p: Presentation, k: int, j: int, i: int, top: bool):
    """Force the first rewrite of x_k x_j x_i at the chosen overlap side."""
    c1 = Coefficient.one(p.context)
    if top:
        rule = p.rules[(k, j)]
        items = [(c1.scale_unit(rule.swap), ((j, 1), (k, 1), (i, 1)))]
        for texp, tc in rule.tail.terms.items():
            items.append((tc, _letters(texp) + ((i, 1),)))
    else:
        rule = p.rules[(j, i)]
        items = [(c1.scale_unit(rule.swap), ((k, 1), (i, 1), (j, 1)))]
        for texp, tc in rule.tail.terms.items():
            items.append((tc, ((k, 1),) + _letters(texp)))
    return items


def diamond_check(p: Presentation, fuel: int | None = None) -> list[OverlapReport]:
    """Resolve every overlap x_k x_j x_i by both critical reduction orders."""
    reports = []
    for i, j, k in itertools.combinations(range(p.ngens), 3):
        try:
            budget = _Fuel(fuel or p.fuel)
            top = _reduce(p, _first_step(p, k, j, i, True), budget)
            bot = _reduce(p, _first_step(p, k, j, i, False), budget)
            diff = Element(top) - Element(bot)
            reports.append(OverlapReport((k, j, i), not diff, diff))
        except FuelExhausted:
            reports.append(OverlapReport((k, j, i), False, None, "fuel exhausted"))
    reports.sort(key=lambda r: r.triple)
    return reports


# -- graded dimension ---------------------------------------------------------


def hilbert_count(p: Presentation, degree: int) -> int:
    """Number of normal monomials of the given total degree.

    Each counted monomial is checked to be fixed by the reduction engine;
    together with an empty diamond_check this certifies the ordered-monomial
    basis at small degree.
    """
    if any(p.invertible):
        raise PresentationError("hilbert_count requires polynomial-kind generators")
    if degree < 0:
        return 0
    n = p.ngens
    if n == 0:
        return 1 if degree == 0 else 0
    count = 0
    for combo in itertools.combinations_with_replacement(range(n), degree):
        exps = [0] * n
        for idx in combo:
            exps[idx] += 1
        m = monomial(p, exps)
        if normal_form(p, list(enumerate(exps))) != m:
            raise EngineError("normal monomial not fixed by reduction")
        count += 1
    return count


# -- printing -----------------------------------------------------------------


def monomial_text(p: Presentation, exp: Sequence[int]) -> str:
    factors = []
    for name, e in zip(p.generators, exp):
        if e == 0:
            continue
        factors.append(name if e == 1 else f"{name}^{e}")
    return "*".join(factors) if factors else "1"


def format_element(p: Presentation, a: Element) -> str:
    """Human- and parser-readable text; leading terms first."""
    if not a:
        return "0"
    parts = []
    for exp in sorted(a.terms, key=order_key, reverse=True):
        c = a.terms[exp]
        mono = monomial_text(p, exp)
        if len(c.terms) == 1:
            (ce, ci), = c.terms.items()
            body = c._term_text(ce, ci)
            neg = ci < 0
            if body == "1":
                text = mono
            elif mono == "1":
                text = body
            else:
                text = f"{body} * {mono}"
            if not parts:
                parts.append(text if not neg else f"-{text}")
            else:
                parts.append(f"+ {text}" if not neg else f"- {text}")
        else:
            text = f"({c}) * {mono}" if mono != "1" else f"({c})"
            parts.append(text if not parts else f"+ {text}")
    return " ".join(parts)
