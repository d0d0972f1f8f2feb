"""Ring presentations k[x1..xn]/I: parsing, Groebner bases, and the
construction of finite-dimensional local quotient algebras.

The text format is line oriented:

    # comment
    char 101
    vars x y
    ideal x^2 + y^2, x*y

`char` is optional (default 101; 0 selects the rationals). Keywords may
not be reused as variable names. Polynomials use integer coefficients
(a/b fractions over the rationals), `*` for products, `^` for powers.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteLocalAlgebra
from .errors import AlgebraError, LindefError, ParseError, ResourceLimitError
from .fields import Field
from .poly import (
    Polynomial,
    degrevlex_key,
    format_monomial,
    monomial_degree,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)

DEFAULT_CHARACTERISTIC = 101
KEYWORDS = ("char", "vars", "ideal")


# ---------------------------------------------------------------------------
# parsing


@dataclass
class _Token:
    kind: str  # INT, IDENT, SYM, EOF
    value: str
    line: int
    col: int


def _tokenize(text: str):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in "+-*^,/":
            tokens.append(_Token("SYM", ch, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _PolyParser:
    """Recursive descent over the token list for one statement."""

    def __init__(self, tokens, pos, field: Field, varnames):
        self.tokens = tokens
        self.pos = pos
        self.field = field
        self.varnames = list(varnames)
        self.var_index = {v: i for i, v in enumerate(varnames)}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def at_statement_end(self) -> bool:
        t = self.peek()
        return t.kind == "EOF" or (t.kind == "IDENT" and t.value in KEYWORDS)

    def parse_poly_list(self):
        polys = [self.parse_poly()]
        while self.peek().kind == "SYM" and self.peek().value == ",":
            self.next()
            polys.append(self.parse_poly())
        return polys

    def parse_poly(self) -> Polynomial:
        n = len(self.varnames)
        poly = Polynomial.zero(self.field, n)
        sign = 1
        t = self.peek()
        if t.kind == "SYM" and t.value in "+-":
            self.next()
            sign = -1 if t.value == "-" else 1
        while True:
            poly = poly + self.parse_term() * self.field.scalar(sign)
            t = self.peek()
            if t.kind == "SYM" and t.value in "+-":
                self.next()
                sign = -1 if t.value == "-" else 1
                continue
            break
        return poly

    def parse_term(self) -> Polynomial:
        n = len(self.varnames)
        t = self.peek()
        if t.kind not in ("INT", "IDENT"):
            raise ParseError(
                f"expected a coefficient or variable, got {t.value!r}", t.line, t.col
            )
        coeff = self.field.scalar(1)
        factors = []
        first = True
        while True:
            t = self.peek()
            if t.kind == "INT":
                self.next()
                value = int(t.value)
                if (
                    self.field.p == 0
                    and self.peek().kind == "SYM"
                    and self.peek().value == "/"
                ):
                    self.next()
                    den = self.next()
                    if den.kind != "INT" or int(den.value) == 0:
                        raise ParseError(
                            "expected a nonzero integer denominator",
                            den.line,
                            den.col,
                        )
                    coeff = coeff * self.field.scalar(value) / int(den.value)
                else:
                    coeff = coeff * self.field.scalar(value)
            elif t.kind == "IDENT":
                if t.value in KEYWORDS:
                    if first:
                        raise ParseError(
                            f"unexpected keyword {t.value!r} in polynomial",
                            t.line,
                            t.col,
                        )
                    break
                self.next()
                if t.value not in self.var_index:
                    raise ParseError(f"unknown variable {t.value!r}", t.line, t.col)
                exp = 1
                if self.peek().kind == "SYM" and self.peek().value == "^":
                    self.next()
                    e = self.next()
                    if e.kind != "INT":
                        raise ParseError(
                            f"expected an integer exponent, got {e.value!r}",
                            e.line,
                            e.col,
                        )
                    exp = int(e.value)
                factors.append((self.var_index[t.value], exp))
            else:
                raise ParseError(
                    f"expected a coefficient or variable, got {t.value or 'end of input'!r}",
                    t.line,
                    t.col,
                )
            first = False
            nxt = self.peek()
            if nxt.kind == "SYM" and nxt.value == "*":
                self.next()
                continue
            break
        mon = [0] * n
        for idx, e in factors:
            mon[idx] += e
        return Polynomial.from_monomial(self.field, n, tuple(mon), coeff)


@dataclass
class Presentation:
    """A parsed ring presentation k[vars]/(gens)."""

    field: Field
    varnames: list
    gens: list

    def to_text(self) -> str:
        lines = [f"char {self.field.p}", "vars " + " ".join(self.varnames)]
        if self.gens:
            lines.append(
                "ideal " + ", ".join(g.to_string(self.varnames) for g in self.gens)
            )
        return "\n".join(lines) + "\n"

    def describe(self) -> dict:
        return {
            "char": self.field.p,
            "vars": list(self.varnames),
            "ideal": [g.to_string(self.varnames) for g in self.gens],
        }


def parse_presentation(text: str) -> Presentation:
    tokens = _tokenize(text)
    pos = 0
    char = None
    varnames = None
    gens = None
    while tokens[pos].kind != "EOF":
        t = tokens[pos]
        if t.kind != "IDENT" or t.value not in KEYWORDS:
            raise ParseError(
                f"expected a statement keyword, got {t.value!r}", t.line, t.col
            )
        pos += 1
        if t.value == "char":
            if char is not None:
                raise ParseError("duplicate char statement", t.line, t.col)
            if varnames is not None or gens is not None:
                raise ParseError("char must precede vars and ideal", t.line, t.col)
            num = tokens[pos]
            if num.kind != "INT":
                raise ParseError("char expects an integer", num.line, num.col)
            char = int(num.value)
            pos += 1
        elif t.value == "vars":
            if varnames is not None:
                raise ParseError("duplicate vars statement", t.line, t.col)
            varnames = []
            while tokens[pos].kind == "IDENT" and tokens[pos].value not in KEYWORDS:
                name = tokens[pos]
                if name.value in varnames:
                    raise ParseError(
                        f"duplicate variable {name.value!r}", name.line, name.col
                    )
                varnames.append(name.value)
                pos += 1
            if not varnames:
                raise ParseError("vars expects at least one name", t.line, t.col)
        else:  # ideal
            if gens is not None:
                raise ParseError("duplicate ideal statement", t.line, t.col)
            if varnames is None:
                raise ParseError("ideal requires a preceding vars statement", t.line, t.col)
            field = Field(DEFAULT_CHARACTERISTIC if char is None else char)
            pp = _PolyParser(tokens, pos, field, varnames)
            gens = pp.parse_poly_list()
            pos = pp.pos
            if not pp.at_statement_end():
                bad = tokens[pos]
                raise ParseError(
                    f"unexpected token {bad.value!r} after ideal", bad.line, bad.col
                )
    if varnames is None:
        raise ParseError("missing vars statement", 1, 1)
    field = Field(DEFAULT_CHARACTERISTIC if char is None else char)
    return Presentation(field, varnames, gens or [])


# ---------------------------------------------------------------------------
# Groebner bases


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of f under multivariate division by `basis`.

    Deterministic: always reduces the current leading term, using the
    first divisor in list order. Every monomial of the result is
    irreducible against the basis.
    """
    field = f.field
    rem = Polynomial.zero(field, f.nvars)
    work = f
    while not work.is_zero:
        lm, lc = work.leading_term()
        for g in basis:
            gm, gc = g.leading_term()
            if monomial_divides(gm, lm):
                q = monomial_quotient(lm, gm)
                if field.p:
                    factor = field.scalar(lc * pow(int(gc), -1, field.p))
                else:
                    factor = lc / gc
                work = work - g.shift_by_monomial(q, factor)
                break
        else:
            t = Polynomial.from_monomial(field, f.nvars, lm, lc)
            rem = rem + t
            work = work - t
    return rem


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    field = f.field
    fm, fc = f.leading_term()
    gm, gc = g.leading_term()
    lcm = monomial_lcm(fm, gm)
    a = f.shift_by_monomial(monomial_quotient(lcm, fm), field.scalar(1))
    b = g.shift_by_monomial(monomial_quotient(lcm, gm), field.scalar(1))
    if field.p:
        return a * pow(int(fc), -1, field.p) - b * pow(int(gc), -1, field.p)
    return a * (1 / fc) - b * (1 / gc)


def buchberger(gens, pair_cap: int = 20000):
    """Reduced Groebner basis (degrevlex) of the ideal generated by gens.

    Processes S-pairs in order of (lcm degree, lcm, index); pairs with
    coprime leading terms are skipped. Raises ResourceLimitError after
    pair_cap pair reductions.
    """
    basis = []
    for g in gens:
        if not g.is_zero:
            basis.append(g.monic())
    if not basis:
        return []
    heap = []

    def push_pairs(new_index):
        gm = basis[new_index].leading_term()[0]
        for i in range(new_index):
            im = basis[i].leading_term()[0]
            lcm = monomial_lcm(im, gm)
            if lcm == monomial_mul(im, gm):
                continue  # coprime leading terms: S-pair reduces to zero
            heapq.heappush(
                heap,
                (monomial_degree(lcm), degrevlex_key(lcm), i, new_index),
            )

    for idx in range(len(basis)):
        push_pairs(idx)
    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        processed += 1
        if processed > pair_cap:
            raise ResourceLimitError(
                f"Groebner pair limit {pair_cap} exceeded; ideal too complex"
            )
        s = s_polynomial(basis[i], basis[j])
        r = normal_form(s, basis)
        if not r.is_zero:
            basis.append(r.monic())
            push_pairs(len(basis) - 1)
    return _interreduce(basis)


def _interreduce(basis):
    """Minimalize leading terms, tail-reduce, sort by leading term."""
    basis = sorted(basis, key=lambda g: degrevlex_key(g.leading_term()[0]))
    minimal = []
    seen = set()
    for g in basis:
        gm = g.leading_term()[0]
        if gm in seen:
            continue
        if any(monomial_divides(h.leading_term()[0], gm) for h in minimal):
            continue
        minimal.append(g)
        seen.add(gm)
    reduced = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        r = normal_form(g, others) if others else g
        reduced.append(r.monic())
    reduced.sort(key=lambda g: degrevlex_key(g.leading_term()[0]))
    return reduced


def quotient_basis(gb, nvars: int, dim_cap: int = 2000):
    """Standard monomials of a zero-dimensional leading-term staircase.

    Raises AlgebraError when the quotient is not finite dimensional
    (some variable admits no pure power among the leading terms).
    """
    lts = [g.leading_term()[0] for g in gb]
    if any(monomial_degree(m) == 0 for m in lts):
        return []  # ideal contains a unit: zero ring
    bounds = []
    for i in range(nvars):
        pure = [
            m[i]
            for m in lts
            if m[i] > 0 and all(e == 0 for j, e in enumerate(m) if j != i)
        ]
        if not pure:
            raise AlgebraError(
                f"quotient is not finite dimensional: no pure power of "
                f"variable {i} among the leading terms"
            )
        bounds.append(min(pure))
    total = 1
    for b in bounds:
        total *= b
        if total > 50 * dim_cap:
            raise ResourceLimitError("staircase enumeration box too large")
    out = []
    import itertools

    for mon in itertools.product(*(range(b) for b in bounds)):
        if not any(monomial_divides(lt, mon) for lt in lts):
            out.append(mon)
            if len(out) > dim_cap:
                raise ResourceLimitError(
                    f"quotient dimension exceeds cap {dim_cap}"
                )
    out.sort(key=degrevlex_key)
    return out


# ---------------------------------------------------------------------------
# algebra construction


def build_algebra(pres: Presentation, dim_cap: int = 2000, pair_cap: int = 20000):
    """Quotient algebra k[vars]/I as a structure-constant table.

    The basis consists of the standard monomials sorted by degrevlex
    (degree first), so the unit is basis element 0 and the maximal
    ideal is spanned by the non-constant basis monomials.
    """
    field = pres.field
    n = len(pres.varnames)
    gb = buchberger(pres.gens, pair_cap=pair_cap)
    qb = quotient_basis(gb, n, dim_cap=dim_cap)
    if not qb:
        raise AlgebraError("the ideal contains a unit; the quotient is the zero ring")
    d = len(qb)
    index = {m: i for i, m in enumerate(qb)}
    table = field.zeros((d, d, d))
    for i, mi in enumerate(qb):
        for j, mj in enumerate(qb):
            if j < i:
                table[i, j] = table[j, i]
                continue
            prod = Polynomial.from_monomial(field, n, monomial_mul(mi, mj), 1)
            nf = normal_form(prod, gb)
            for mon, c in nf.terms.items():
                table[i, j, index[mon]] = c
    unit = field.zeros((d,))
    unit[index[(0,) * n]] = field.scalar(1)
    mgens = field.zeros((n, d))
    for v in range(n):
        nf = normal_form(Polynomial.variable(field, n, v), gb)
        for mon, c in nf.terms.items():
            mgens[v, index[mon]] = c
    labels = [format_monomial(m, pres.varnames) for m in qb]
    return FiniteLocalAlgebra(
        field,
        table,
        unit,
        mgens,
        labels=labels,
        presentation=pres.describe(),
    )


def algebra_from_text(text: str, dim_cap: int = 2000, pair_cap: int = 20000):
    return build_algebra(parse_presentation(text), dim_cap=dim_cap, pair_cap=pair_cap)


def load_structure_constants(data: dict):
    """Algebra from an explicit structure-constant table.

    Expected keys: char, dim, basis (labels), unit (basis index),
    m_generators (list of basis indices), table (dim x dim nested lists,
    table[i][j] = coefficient vector of e_i * e_j). All ring laws and
    locality are verified by the FiniteLocalAlgebra constructor.
    """
    required = ("char", "dim", "basis", "unit", "m_generators", "table")
    for key in required:
        if key not in data:
            raise AlgebraError(f"structure constants missing key {key!r}")
    try:
        field = Field(int(data["char"]))
    except (TypeError, ValueError) as exc:
        raise AlgebraError(f"bad characteristic: {exc}") from exc
    d = int(data["dim"])
    if d < 1:
        raise AlgebraError("dim must be at least 1")
    labels = [str(s) for s in data["basis"]]
    if len(labels) != d:
        raise AlgebraError(f"expected {d} basis labels, got {len(labels)}")

    def basis_vector(idx, what):
        idx = int(idx)
        if not 0 <= idx < d:
            raise AlgebraError(f"{what} index {idx} out of range 0..{d - 1}")
        v = field.zeros((d,))
        v[idx] = field.scalar(1)
        return v

    def coeff_vector(v, what):
        if len(v) != d:
            raise AlgebraError(f"{what} must have length {d}")
        return field.asarray([field.parse_scalar(str(c)) for c in v])

    unit = basis_vector(data["unit"], "unit")
    mg = data["m_generators"]
    if not mg:
        raise AlgebraError("m_generators must be nonempty")
    mgens = np.stack([basis_vector(i, "m_generator") for i in mg])
    table_data = data["table"]
    if len(table_data) != d or any(len(row) != d for row in table_data):
        raise AlgebraError(f"table must be {d}x{d} vectors of length {d}")
    table = field.zeros((d, d, d))
    for i in range(d):
        for j in range(d):
            table[i, j] = coeff_vector(table_data[i][j], f"table[{i}][{j}]")
    return FiniteLocalAlgebra(field, table, unit, mgens, labels=labels)
