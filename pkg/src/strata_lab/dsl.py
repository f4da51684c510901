"""Presentation DSL: parsing, expression evaluation, and printing.

Line-oriented source files describe either one explicit presentation

    algebra quantum_plane
    params q_1_2
    generators x1 x2
    rules
    x2 * x1 = q_1_2^-1 * x1 * x2
    weights
    x1 = (1, 0)
    x2 = (0, 1)

or one zoo invocation such as ``use quantum_affine(n=2)``.  Expressions use
integer literals, parameter symbols, generators, ``*``, ``+``, ``-``, ``^``
with integer exponents, and parentheses.  '#' starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import zoo
from .coeff import Coefficient, NonUnitDivision, ParamContext
from .pbw import (Element, Presentation, Rule, format_element, normal_form)


class DslError(Exception):
    """Parse or semantic error with source location."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str          # NAME, INT, OP, NEWLINE, EOF
    value: str
    line: int
    col: int


_OPS = set("*+-=^(),")


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            toks.append(Token("NEWLINE", "\n", line, col))
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            toks.append(Token("OP", ch, line, col))
            i += 1
            col += 1
            continue
        raise DslError(f"unexpected character {ch!r}", line, col)
    toks.append(Token("EOF", "", line, col))
    return toks


class _Stream:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def skip_newlines(self):
        while self.peek().kind == "NEWLINE":
            self.next()

    def expect(self, kind: str, value: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (value is not None and t.value != value):
            want = value if value is not None else kind
            raise DslError(f"expected {want!r}, found {t.value!r}", t.line, t.col)
        return self.next()

    def at_line_end(self) -> bool:
        return self.peek().kind in ("NEWLINE", "EOF")


# -- expressions ------------------------------------------------------------
#
# An expression value is a list of (Coefficient, word) pairs, where a word is
# a tuple of (generator index, exponent) factors in written order.

_Term = tuple[Coefficient, tuple[tuple[int, int], ...]]


class _ExprParser:
    def __init__(self, stream: _Stream, context: ParamContext, gen_index):
        self.s = stream
        self.ctx = context
        self.gens = gen_index or {}

    def parse(self) -> list[_Term]:
        terms = self._expr()
        return terms

    def _expr(self) -> list[_Term]:
        t = self.s.peek()
        if t.kind == "OP" and t.value == "-":
            self.s.next()
            terms = [(-c, w) for c, w in self._product()]
        else:
            terms = self._product()
        while True:
            t = self.s.peek()
            if t.kind == "OP" and t.value in "+-":
                self.s.next()
                rhs = self._product()
                if t.value == "-":
                    rhs = [(-c, w) for c, w in rhs]
                terms = terms + rhs
            else:
                return terms

    def _product(self) -> list[_Term]:
        terms = self._factor()
        while True:
            t = self.s.peek()
            if t.kind == "OP" and t.value == "*":
                self.s.next()
                rhs = self._factor()
                terms = [(c1 * c2, w1 + w2) for c1, w1 in terms for c2, w2 in rhs]
            else:
                return terms

    def _signed_int(self) -> int:
        sign = 1
        t = self.s.peek()
        if t.kind == "OP" and t.value in "+-":
            self.s.next()
            if t.value == "-":
                sign = -1
            t = self.s.peek()
        tok = self.s.expect("INT")
        return sign * int(tok.value)

    def _factor(self) -> list[_Term]:
        t = self.s.peek()
        if t.kind == "OP" and t.value == "-":
            self.s.next()
            return [(-c, w) for c, w in self._factor()]
        if t.kind == "INT":
            self.s.next()
            k = self._exponent()
            value = int(t.value)
            if k is None or k >= 0:
                value = value ** (k if k is not None else 1)
            elif value in (1, -1):
                value = value ** (-k)
            else:
                raise DslError(f"cannot invert the integer {value}", t.line, t.col)
            return [(Coefficient.integer(self.ctx, value), ())]
        if t.kind == "NAME":
            self.s.next()
            k = self._exponent()
            k = 1 if k is None else k
            if t.value in self.gens:
                return [(Coefficient.one(self.ctx), ((self.gens[t.value], k),))]
            if t.value in self.ctx:
                return [(Coefficient.symbol(self.ctx, t.value, k), ())]
            raise DslError(f"unknown symbol {t.value!r}", t.line, t.col)
        if t.kind == "OP" and t.value == "(":
            self.s.next()
            inner = self._expr()
            self.s.expect("OP", ")")
            k = self._exponent()
            if k is None or k == 1:
                return inner
            if k < 0:
                raise DslError("cannot invert a parenthesized expression", t.line, t.col)
            out: list[_Term] = [(Coefficient.one(self.ctx), ())]
            for _ in range(k):
                out = [(c1 * c2, w1 + w2) for c1, w1 in out for c2, w2 in inner]
            return out
        raise DslError(f"unexpected token {t.value!r}", t.line, t.col)

    def _exponent(self) -> int | None:
        t = self.s.peek()
        if t.kind == "OP" and t.value == "^":
            self.s.next()
            return self._signed_int()
        return None


def parse_coefficient(context: ParamContext, text: str) -> Coefficient:
    """Parse a pure coefficient expression over the given parameter context."""
    stream = _Stream(tokenize(text))
    stream.skip_newlines()
    terms = _ExprParser(stream, context, {}).parse()
    stream.skip_newlines()
    t = stream.peek()
    if t.kind != "EOF":
        raise DslError(f"trailing input {t.value!r}", t.line, t.col)
    total = Coefficient.zero(context)
    for c, w in terms:
        if w:
            raise DslError("generators are not allowed in a coefficient")
        total = total + c
    return total


def evaluate_expression(p: Presentation, text: str) -> Element:
    """Parse an expression over a presentation and reduce it to normal form."""
    stream = _Stream(tokenize(text))
    stream.skip_newlines()
    gen_index = {g: i for i, g in enumerate(p.generators)}
    terms = _ExprParser(stream, p.context, gen_index).parse()
    stream.skip_newlines()
    t = stream.peek()
    if t.kind != "EOF":
        raise DslError(f"trailing input {t.value!r}", t.line, t.col)
    total = Element()
    for c, w in terms:
        total = total + normal_form(p, list(w), scalar=c)
    return total


# -- presentation files -------------------------------------------------------


_SECTIONS = ("params", "generators", "rules", "weights")


def parse(source: str) -> Presentation:
    """Parse a source file: either one zoo invocation or one explicit presentation."""
    stream = _Stream(tokenize(source))
    stream.skip_newlines()
    t = stream.peek()
    if t.kind == "NAME" and t.value == "use":
        return _parse_zoo_call(stream)
    return _parse_presentation(stream)


def _parse_zoo_call(stream: _Stream) -> Presentation:
    stream.expect("NAME", "use")
    fam = stream.expect("NAME")
    stream.expect("OP", "(")
    kwargs: dict[str, object] = {}
    if not (stream.peek().kind == "OP" and stream.peek().value == ")"):
        while True:
            key = stream.expect("NAME")
            stream.expect("OP", "=")
            v = stream.peek()
            if v.kind == "INT":
                stream.next()
                kwargs[key.value] = int(v.value)
            elif v.kind == "NAME" and v.value in ("true", "false"):
                stream.next()
                kwargs[key.value] = v.value == "true"
            elif v.kind == "NAME":
                stream.next()
                kwargs[key.value] = v.value
            else:
                raise DslError(f"bad value for {key.value!r}", v.line, v.col)
            t = stream.peek()
            if t.kind == "OP" and t.value == ",":
                stream.next()
                continue
            break
    stream.expect("OP", ")")
    stream.skip_newlines()
    stream.expect("EOF")
    return _build_zoo(fam, kwargs)


def _build_zoo(fam: Token, kwargs: dict) -> Presentation:
    family = fam.value
    single = bool(kwargs.pop("single_param", False))

    def need(key: str) -> int:
        if key not in kwargs:
            raise DslError(f"{family} needs {key}=<int>", fam.line, fam.col)
        v = kwargs.pop(key)
        if not isinstance(v, int):
            raise DslError(f"{key} must be an integer", fam.line, fam.col)
        return v

    try:
        if family == "quantum_affine":
            n = need("n")
            p = zoo.quantum_affine_single(n) if single else zoo.quantum_affine_generic(n)
        elif family == "quantum_torus":
            n = need("n")
            p = zoo.quantum_torus_single(n) if single else zoo.quantum_torus_generic(n)
        elif family == "quantum_matrices":
            m, n = need("m"), need("n")
            p = (zoo.quantum_matrices_single(m, n) if single
                 else zoo.quantum_matrices_generic(m, n))
        elif family == "quantized_weyl":
            p = zoo.quantized_weyl_generic(need("n"))
        elif family == "quantum_symplectic":
            p = zoo.quantum_symplectic(need("n"))
        elif family == "quantum_euclidean":
            p = zoo.quantum_euclidean(need("n"))
        else:
            raise DslError(f"unknown algebra family {family!r}", fam.line, fam.col)
    except zoo.ZooError as exc:
        raise DslError(str(exc), fam.line, fam.col) from exc
    if kwargs:
        raise DslError(f"unknown parameters {sorted(kwargs)}", fam.line, fam.col)
    return p


def _parse_presentation(stream: _Stream) -> Presentation:
    stream.expect("NAME", "algebra")
    name = stream.expect("NAME").value
    stream.skip_newlines()

    params: list[str] = []
    if stream.peek().kind == "NAME" and stream.peek().value == "params":
        stream.next()
        while not stream.at_line_end():
            params.append(stream.expect("NAME").value)
        stream.skip_newlines()
    context = ParamContext(params)

    gens: list[str] = []
    invertible = False
    if stream.peek().kind == "NAME" and stream.peek().value == "generators":
        stream.next()
        while not stream.at_line_end():
            gens.append(stream.expect("NAME").value)
        if gens and gens[-1] == "invertible":
            gens.pop()
            invertible = True
        stream.skip_newlines()
    for g in gens:
        if g in _SECTIONS or g in context:
            raise DslError(f"generator name {g!r} clashes with a keyword or parameter")
    gen_index = {g: i for i, g in enumerate(gens)}
    n = len(gens)

    raw_rules: dict[tuple[int, int], tuple[Element, Token]] = {}
    if stream.peek().kind == "NAME" and stream.peek().value == "rules":
        stream.next()
        stream.skip_newlines()
        while stream.peek().kind == "NAME" and stream.peek().value not in _SECTIONS:
            lhs_tok = stream.peek()
            a = stream.expect("NAME").value
            stream.expect("OP", "*")
            b = stream.expect("NAME").value
            stream.expect("OP", "=")
            if a not in gen_index or b not in gen_index:
                raise DslError(f"rule over unknown generators {a!r}, {b!r}",
                               lhs_tok.line, lhs_tok.col)
            hi, lo = gen_index[a], gen_index[b]
            if hi <= lo:
                raise DslError("rules must rewrite a descending product",
                               lhs_tok.line, lhs_tok.col)
            if (hi, lo) in raw_rules:
                raise DslError(f"duplicate rule for pair ({a}, {b})",
                               lhs_tok.line, lhs_tok.col)
            terms = _ExprParser(stream, context, gen_index).parse()
            if not stream.at_line_end():
                t = stream.peek()
                raise DslError(f"trailing input {t.value!r}", t.line, t.col)
            element = Element()
            for c, w in terms:
                exp = [0] * n
                last = -1
                for idx, e in w:
                    if idx < last:
                        raise DslError("rule right-hand side must be in normal form "
                                       "(ascending generator order)",
                                       lhs_tok.line, lhs_tok.col)
                    last = idx
                    exp[idx] += e
                element = element + Element({tuple(exp): c})
            raw_rules[(hi, lo)] = (element, lhs_tok)
            stream.skip_newlines()

    rules: dict[tuple[int, int], Rule] = {}
    for (hi, lo), (element, tok) in raw_rules.items():
        swap_exp = tuple(1 if t in (hi, lo) else 0 for t in range(n))
        swap_coeff = element.terms.get(swap_exp)
        if swap_coeff is None:
            raise DslError(f"rule for ({gens[hi]}, {gens[lo]}) has no "
                           f"{gens[lo]}*{gens[hi]} term", tok.line, tok.col)
        try:
            swap = swap_coeff.as_unit()
        except NonUnitDivision as exc:
            raise DslError(f"swap coefficient {swap_coeff} is not a unit monomial",
                           tok.line, tok.col) from exc
        tail = Element({e: c for e, c in element.terms.items() if e != swap_exp})
        rules[(hi, lo)] = Rule(swap, tail)
    missing = [(j, i) for j in range(n) for i in range(j) if (j, i) not in rules]
    if missing:
        j, i = missing[0]
        raise DslError(f"missing rule pair ({gens[j]}, {gens[i]})")

    weights = None
    if stream.peek().kind == "NAME" and stream.peek().value == "weights":
        stream.next()
        stream.skip_newlines()
        wmap: dict[int, tuple[int, ...]] = {}
        while stream.peek().kind == "NAME" and stream.peek().value not in _SECTIONS:
            gtok = stream.expect("NAME")
            if gtok.value not in gen_index:
                raise DslError(f"weight for unknown generator {gtok.value!r}",
                               gtok.line, gtok.col)
            stream.expect("OP", "=")
            stream.expect("OP", "(")
            vec = []
            expr = _ExprParser(stream, context, gen_index)
            vec.append(expr._signed_int())
            while stream.peek().kind == "OP" and stream.peek().value == ",":
                stream.next()
                vec.append(expr._signed_int())
            stream.expect("OP", ")")
            if gen_index[gtok.value] in wmap:
                raise DslError(f"duplicate weight for {gtok.value!r}", gtok.line, gtok.col)
            wmap[gen_index[gtok.value]] = tuple(vec)
            stream.skip_newlines()
        missing_w = [gens[i] for i in range(n) if i not in wmap]
        if missing_w:
            raise DslError(f"missing weights for {missing_w}")
        weights = [wmap[i] for i in range(n)]

    stream.skip_newlines()
    stream.expect("EOF")
    try:
        return Presentation(context, gens, rules, weights,
                            invertible=invertible, name=name)
    except Exception as exc:
        raise DslError(str(exc)) from exc


def print_presentation(p: Presentation) -> str:
    """Render a presentation back to DSL source; parse(print(p)) == p."""
    lines = [f"algebra {p.name}"]
    if p.context.symbols:
        lines.append("params " + " ".join(p.context.symbols))
    if p.ngens:
        gline = "generators " + " ".join(p.generators)
        if all(p.invertible):
            gline += " invertible"
        elif any(p.invertible):
            raise ValueError("mixed generator kinds are not printable")
        lines.append(gline)
    if p.ngens >= 2:
        lines.append("rules")
        for (j, i) in sorted(p.rules):
            rule = p.rules[(j, i)]
            swap_exp = tuple(1 if t in (i, j) else 0 for t in range(p.ngens))
            rhs = Element({swap_exp: rule.swap.to_coefficient(p.context)}) + rule.tail
            lines.append(f"{p.generators[j]} * {p.generators[i]} = "
                         f"{format_element(p, rhs)}")
    if p.rank:
        lines.append("weights")
        for g, w in zip(p.generators, p.weights):
            lines.append(f"{g} = ({', '.join(str(x) for x in w)})")
    return "\n".join(lines) + "\n"
