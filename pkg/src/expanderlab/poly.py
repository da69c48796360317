"""Univariate polynomials over a finite field.

A :class:`Poly` is an immutable coefficient tuple (index = degree, trailing
zeros stripped) over a :class:`~expanderlab.field.Field`.  The zero
polynomial has degree ``NEG_INF`` so degree comparisons stay numeric.

Text format: terms in ``x`` joined by ``+``/``-``, e.g. ``x^2+x`` or
``3*x^3+1``.  Extension-field coefficients are written in ``t`` and wrapped
in parentheses when they have several terms: ``(2*t+1)*x^2+t*x+1``.
"""

from __future__ import annotations

from .errors import FieldMismatchError, ParseError, ZeroPolynomialError
from .field import Field, FieldElem

NEG_INF = float("-inf")


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        elems = [field.element(c) for c in coeffs]
        while elems and elems[-1].is_zero():
            elems.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(elems))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def constant(cls, field: Field, value) -> Poly:
        return cls(field, (value,))

    @classmethod
    def x(cls, field: Field) -> Poly:
        return cls(field, (0, 1))

    # -- structure -----------------------------------------------------------

    def degree(self):
        """Degree as an int; NEG_INF for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, exp: int) -> FieldElem:
        if 0 <= exp < len(self.coeffs):
            return self.coeffs[exp]
        return self.field.zero()

    def leading_coefficient(self) -> FieldElem:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"polynomial over {other.field} used over {self.field}")
            return other
        if isinstance(other, (int, FieldElem)):
            return Poly(self.field, (other,))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        zero = self.field.zero()
        size = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field,
                    [self.coefficient(i) + o.coefficient(i) for i in range(size)]
                    or [zero])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        size = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.field,
                    [self.coefficient(i) - o.coefficient(i) for i in range(size)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return Poly(self.field)
        zero = self.field.zero()
        out = [zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        acc = Poly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    # -- evaluation -------------------------------------------------------------

    def __call__(self, x) -> FieldElem:
        x = self.field.element(x)
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def roots(self) -> tuple[FieldElem, ...]:
        """All roots in the field, by exhaustive scan, in canonical order."""
        return tuple(a for a in self.field.elements() if self(a).is_zero())

    # -- text ---------------------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c.is_zero():
                continue
            c_text = str(c)
            if e == 0:
                parts.append(f"({c_text})" if "+" in c_text else c_text)
                continue
            x_text = "x" if e == 1 else f"x^{e}"
            if c == self.field.one():
                parts.append(x_text)
            elif "+" in c_text:
                parts.append(f"({c_text})*{x_text}")
            else:
                parts.append(f"{c_text}*{x_text}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.field}, {self})"


def from_ints(field: Field, ints) -> Poly:
    """Polynomial with integer coefficients reduced into the field
    (index = degree)."""
    return Poly(field, ints)


def _split_terms(s: str) -> list[str]:
    """Split on '+'/'-' outside parentheses, keeping each term's sign."""
    terms, cur, depth = [], "", 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {s!r}")
        if ch in "+-" and depth == 0 and cur:
            terms.append(cur)
            cur = ""
        cur += ch
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {s!r}")
    if cur:
        terms.append(cur)
    return terms


def parse_poly(text: str, field: Field) -> Poly:
    """Parse a polynomial in ``x`` over ``field``; see the module docstring
    for the grammar."""
    s = text.replace("−", "-").replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    terms: dict[int, FieldElem] = {}
    for term in _split_terms(s):
        negate = False
        while term and term[0] in "+-":
            if term[0] == "-":
                negate = not negate
            term = term[1:]
        if not term:
            raise ParseError(f"dangling sign in {text!r}")
        if "x" in term:
            head, _, tail = term.partition("x")
            if head.endswith("*"):
                head = head[:-1]
            if tail == "":
                exp = 1
            elif tail.startswith("^"):
                try:
                    exp = int(tail[1:])
                except ValueError:
                    raise ParseError(f"bad exponent in {term!r}") from None
                if exp < 0:
                    raise ParseError(f"negative exponent in {term!r}")
            else:
                raise ParseError(f"bad term {term!r} in {text!r}")
            coeff_text = head or "1"
        else:
            exp, coeff_text = 0, term
        if coeff_text.startswith("(") and coeff_text.endswith(")"):
            coeff_text = coeff_text[1:-1]
        coeff = field.parse_element(coeff_text)
        if negate:
            coeff = -coeff
        terms[exp] = terms.get(exp, field.zero()) + coeff
    size = max(terms) + 1
    return Poly(field, [terms.get(i, field.zero()) for i in range(size)])
