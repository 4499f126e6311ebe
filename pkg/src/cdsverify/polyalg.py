"""Exact multivariate polynomials over Q, monomial orders, and Q[x][zeta]/(zeta^4 + 1).

Polynomials are immutable. A polynomial carries its ordered variable list;
arithmetic is only defined between polynomials over the same list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from types import MappingProxyType
from typing import Callable, Iterable, Mapping, Sequence

from .errors import UsageError

MENON_VARIABLES = ("x0", "x1", "x2", "x3", "u")

Exponent = tuple  # tuple[int, ...]


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``kind`` is ``"lex"`` or ``"grevlex"``.

    ``precedence`` lists variable names from most to least significant.  When
    omitted, the polynomial's own variable order is used.
    """

    kind: str = "lex"
    precedence: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise UsageError(f"unknown monomial order kind {self.kind!r}")
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))
            if len(set(self.precedence)) != len(self.precedence):
                raise UsageError("precedence lists a variable twice")

    def key(self, variables: Sequence[str]) -> Callable[[Exponent], tuple]:
        """Sort key on exponent vectors; larger key means larger monomial."""
        return _order_key(self.kind, self.precedence, tuple(variables))

    def __str__(self):
        if self.precedence is None:
            return self.kind
        return f"{self.kind}({'>'.join(self.precedence)})"


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


@lru_cache(maxsize=None)
def _order_key(kind, precedence, variables):
    if precedence is None:
        perm = tuple(range(len(variables)))
    else:
        if sorted(precedence) != sorted(variables):
            raise UsageError(
                f"precedence {precedence} is not a permutation of {variables}"
            )
        perm = tuple(variables.index(name) for name in precedence)
    if kind == "lex":
        return lambda e: tuple(e[i] for i in perm)
    rev = perm[::-1]
    return lambda e: (sum(e), tuple(-e[i] for i in rev))


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


class MultiPoly:
    """Sparse polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`~fractions.Fraction`
    coefficients.  Equality is equality of term maps over the same variables.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise UsageError(f"repeated variable in {variables}")
        nvars = len(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise UsageError(
                    f"exponent {exp} has length {len(exp)}, expected {nvars}"
                )
            if any(e < 0 for e in exp):
                raise UsageError(f"negative exponent in {exp}")
            c = _as_fraction(c)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        self.variables = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted constructor: terms already canonical
        p = object.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables=MENON_VARIABLES) -> MultiPoly:
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables=MENON_VARIABLES) -> MultiPoly:
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables=MENON_VARIABLES) -> MultiPoly:
        variables = tuple(variables)
        if name not in variables:
            raise UsageError(f"unknown variable {name!r}; known: {variables}")
        exp = tuple(int(v == name) for v in variables)
        return cls._raw(variables, {exp: Fraction(1)})

    @classmethod
    def gens(cls, variables=MENON_VARIABLES) -> tuple[MultiPoly, ...]:
        return tuple(cls.var(v, variables) for v in variables)

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or (
            len(self._terms) == 1 and not any(next(iter(self._terms)))
        )

    def total_degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._terms), default=-1)

    def support(self) -> set[str]:
        """Variables that actually occur."""
        return {
            v for i, v in enumerate(self.variables) if any(e[i] for e in self._terms)
        }

    def _index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise UsageError(
                f"unknown variable {name!r}; known: {self.variables}"
            ) from None

    # arithmetic

    def _coerce(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise UsageError(
                    f"variable lists differ: {self.variables} vs {other.variables}"
                )
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                del out[exp]
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for ea, ca in self._terms.items():
            for eb, cb in other._terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exp, 0) + ca * cb
                if s:
                    out[exp] = s
                else:
                    del out[exp]
        return MultiPoly._raw(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise UsageError("polynomial powers must be nonnegative integers")
        result = MultiPoly.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> MultiPoly:
        c = _as_fraction(c)
        if not c:
            return MultiPoly._raw(self.variables, {})
        return MultiPoly._raw(self.variables, {e: c * v for e, v in self._terms.items()})

    def mul_term(self, exp: Exponent, coeff) -> MultiPoly:
        """Multiply by the single term ``coeff * X^exp``."""
        coeff = _as_fraction(coeff)
        if not coeff:
            return MultiPoly._raw(self.variables, {})
        return MultiPoly._raw(
            self.variables,
            {
                tuple(x + y for x, y in zip(e, exp)): c * coeff
                for e, c in self._terms.items()
            },
        )

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Rational)):
            return self == MultiPoly.constant(other, self.variables)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # ordering-dependent queries

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exponent, Fraction]]:
        """Terms from largest to smallest monomial."""
        key = order.key(self.variables)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise UsageError("the zero polynomial has no leading term")
        key = order.key(self.variables)
        exp = max(self._terms, key=key)
        return exp, self._terms[exp]

    def leading_monomial(self, order: MonomialOrder) -> Exponent:
        return self.leading_term(order)[0]

    def leading_coefficient(self, order: MonomialOrder) -> Fraction:
        return self.leading_term(order)[1]

    def monic(self, order: MonomialOrder) -> MultiPoly:
        if not self._terms:
            return self
        return self.scale(1 / self.leading_coefficient(order))

    # substitution

    def substitute(self, bindings: Mapping[str, object]):
        """Substitute rational values for some variables.

        Returns a :class:`Fraction` when every variable is bound, otherwise a
        polynomial over the remaining variables (in their original order).
        """
        idx = {}
        for name, value in bindings.items():
            idx[self._index(name)] = _as_fraction(value)
        keep = [i for i in range(len(self.variables)) if i not in idx]
        out = {}
        for exp, c in self._terms.items():
            for i, val in idx.items():
                if exp[i]:
                    c = c * val ** exp[i]
            if not c:
                continue
            rest = tuple(exp[i] for i in keep)
            s = out.get(rest, 0) + c
            if s:
                out[rest] = s
            else:
                del out[rest]
        if not keep:
            return out.get((), Fraction(0))
        return MultiPoly._raw(tuple(self.variables[i] for i in keep), out)

    def __call__(self, *values):
        """Evaluate at a full point given in variable order."""
        if len(values) != len(self.variables):
            raise UsageError(
                f"expected {len(self.variables)} values, got {len(values)}"
            )
        return self.substitute(dict(zip(self.variables, values)))

    def with_variables(self, variables: Sequence[str]) -> MultiPoly:
        """Re-express over a variable list containing every variable in use."""
        variables = tuple(variables)
        used = self.support()
        missing = used - set(variables)
        if missing:
            raise UsageError(f"variables {sorted(missing)} not in target list")
        pos = {v: i for i, v in enumerate(self.variables)}
        out = {}
        for exp, c in self._terms.items():
            out[tuple(exp[pos[v]] if v in pos else 0 for v in variables)] = c
        return MultiPoly._raw(variables, out)

    # text form

    def __str__(self):
        return self.to_text()

    def to_text(self, order: MonomialOrder = GREVLEX) -> str:
        """Canonical text, terms listed from largest to smallest under ``order``."""
        if not self._terms:
            return "0"
        pieces = []
        for exp, c in self.sorted_terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.variables, exp)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    def __repr__(self):
        return f"MultiPoly({self.variables!r}, {str(self)!r})"


# parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^()/]))")


def _tokenize(text):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise UsageError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("var", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.variables = variables

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise UsageError(f"expected {value or 'a token'}, found {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "-":
                sign = -sign
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.power()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise UsageError("division only by nonzero constants")
                acc = acc.scale(1 / _const_value(rhs))
        return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise UsageError("exponents must be nonnegative integers")
            return base ** int(val)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.constant(Fraction(val), self.variables)
        if kind == "var":
            self.take()
            return MultiPoly.var(val, self.variables)
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.power()
        raise UsageError(f"unexpected token {val!r}")


def _const_value(p: MultiPoly) -> Fraction:
    return p.terms.get((0,) * len(p.variables), Fraction(0))


def parse_poly(text: str, variables: Sequence[str] = MENON_VARIABLES) -> MultiPoly:
    """Parse the text grammar produced by ``str(MultiPoly)``.

    Accepts integer or ``p/q`` coefficients, ``*`` products, ``^`` (or ``**``)
    powers, parentheses, and variables from ``variables``.
    """
    parser = _Parser(text, tuple(variables))
    if not parser.tokens:
        raise UsageError("empty polynomial literal")
    result = parser.expr()
    if parser.i != len(parser.tokens):
        raise UsageError(f"trailing input in polynomial literal {text!r}")
    return result


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if not isinstance(a, MultiPoly) or not isinstance(b, MultiPoly):
        raise UsageError("poly_arith expects two polynomials")
    if a.variables != b.variables:
        raise UsageError(f"variable lists differ: {a.variables} vs {b.variables}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown operation {op!r}")


# Q[vars][zeta] / (zeta^4 + 1) ---------------------------------------------


class CyclotomicElement:
    """Element c0 + c1*z + c2*z^2 + c3*z^3 with z^4 = -1 and polynomial coefficients.

    z is a primitive 8th root of unity, so z^-k = -z^(4-k) for k = 1..3.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[MultiPoly]):
        coeffs = tuple(coeffs)
        if len(coeffs) != 4:
            raise UsageError("a cyclotomic element needs exactly four coordinates")
        variables = coeffs[0].variables
        if any(c.variables != variables for c in coeffs):
            raise UsageError("coordinates must share one variable list")
        self.coeffs = coeffs

    @property
    def variables(self):
        return self.coeffs[0].variables

    @classmethod
    def from_poly(cls, p: MultiPoly) -> CyclotomicElement:
        z = MultiPoly.zero(p.variables)
        return cls((p, z, z, z))

    @classmethod
    def zeta_power(cls, k: int, variables=MENON_VARIABLES) -> CyclotomicElement:
        """z^k for any integer k, reduced with z^4 = -1 (so z^8 = 1)."""
        k %= 8
        sign = -1 if k >= 4 else 1
        coords = [MultiPoly.zero(variables)] * 4
        coords[k % 4] = MultiPoly.constant(sign, variables)
        return cls(coords)

    @classmethod
    def from_powers(cls, coefficients: Sequence[MultiPoly], sign: int = 1) -> CyclotomicElement:
        """Sum of coefficients[i] * z^(sign*i)."""
        variables = coefficients[0].variables
        total = cls.from_poly(MultiPoly.zero(variables))
        for i, c in enumerate(coefficients):
            total = total + cls.zeta_power(sign * i, variables).scale_by(c)
        return total

    def scale_by(self, p: MultiPoly) -> CyclotomicElement:
        return CyclotomicElement(tuple(c * p for c in self.coeffs))

    def __add__(self, other):
        return CyclotomicElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        return CyclotomicElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CyclotomicElement(tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other.variables != self.variables:
            raise UsageError("cyclotomic operands use different variable lists")
        out = [MultiPoly.zero(self.variables)] * 4
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                k = i + j
                prod = a * b
                if k >= 4:
                    out[k - 4] = out[k - 4] - prod
                else:
                    out[k] = out[k] + prod
        return CyclotomicElement(out)

    def __eq__(self, other):
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "CyclotomicElement(" + ", ".join(f"[{c}]" for c in self.coeffs) + ")"


def cyclotomic_mul(a: CyclotomicElement, b: CyclotomicElement) -> CyclotomicElement:
    return a * b
