"""Exact arithmetic in prime fields F_p and extensions F_{p^n}.

Elements are coefficient vectors in the power basis of the modulus root
``t``; all arithmetic is exact integer arithmetic mod p.  Fields in scope
are desk-sized (enumeration assumes roughly p^n <= 10^4), so the
irreducibility and root checks are deliberately brute force.

Text formats:
  field    "5", "3^2" (default modulus), "3^2/t^2+1" (explicit modulus)
  element  prime field: a decimal integer; extension: a polynomial in t,
           e.g. "2*t+1" (spaces optional, terms in any order, coefficients
           reduced mod p on parse)
"""

from __future__ import annotations

import itertools

from .errors import (
    FieldMismatchError,
    NotDivisorError,
    NotIrreducibleError,
    NotPrimeError,
    ParseError,
)


def is_prime(p: int) -> bool:
    """Trial-division primality test; fine at the scales this library targets."""
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# Internal helpers on raw coefficient lists over F_p (index = degree).
# Used for modulus arithmetic before any Field object exists.


def _vec_trim(u: list[int]) -> list[int]:
    while u and u[-1] == 0:
        u.pop()
    return u


def _vec_mul(u: list[int], v: list[int], p: int) -> list[int]:
    if not u or not v:
        return []
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                out[i + j] = (out[i + j] + a * b) % p
    return _vec_trim(out)

def _vec_mod(u: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of u modulo a monic m."""
    r = [c % p for c in u]
    _vec_trim(r)
    dm = len(m) - 1
    while len(r) - 1 >= dm:
        shift = len(r) - 1 - dm
        lead = r[-1]
        for i, c in enumerate(m):
            r[shift + i] = (r[shift + i] - lead * c) % p
        _vec_trim(r)
    return r


def _vec_eval(u: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(u):
        acc = (acc * x + c) % p
    return acc


def _vec_inverse_mod(u: list[int], m: list[int], p: int) -> list[int]:
    """Inverse of u modulo monic irreducible m, by the extended Euclidean algorithm."""
    # Invariants: r0 = s0*u mod m, r1 = s1*u mod m.
    r0, r1 = [c % p for c in m], _vec_mod(u, m, p)
    s0, s1 = [], [1]
    if not r1:
        raise ZeroDivisionError("inverse of zero")
    while r1:
        # Divide r0 by r1 (r1 need not be monic).
        lead_inv = pow(r1[-1], p - 2, p)
        q = [0] * (max(len(r0) - len(r1), -1) + 1)
        r = r0[:]
        while len(r) >= len(r1):
            shift = len(r) - len(r1)
            factor = (r[-1] * lead_inv) % p
            q[shift] = factor
            for i, c in enumerate(r1):
                r[shift + i] = (r[shift + i] - factor * c) % p
            _vec_trim(r)
        r0, r1 = r1, r
        s0, s1 = s1, _vec_trim([(a - b) % p for a, b in
                                itertools.zip_longest(s0, _vec_mul(q, s1, p), fillvalue=0)])
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible (modulus not irreducible?)")
    scale = pow(r0[0], p - 2, p)
    return _vec_trim([(c * scale) % p for c in _vec_mod(s0, m, p)])


def _is_irreducible(m: list[int], p: int) -> bool:
    """Brute-force irreducibility of monic m: root check, then trial division."""
    n = len(m) - 1
    if n == 1:
        return True
    if any(_vec_eval(m, x, p) == 0 for x in range(p)):
        return False
    if n <= 3:
        return True  # a reducible cubic or quadratic has a linear factor
    for deg in range(2, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            cand = list(tail) + [1]
            if not _vec_mod(m, cand, p):
                return False
    return True


def _smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """First irreducible monic degree-n polynomial, coefficient tuples ordered
    low-degree-first."""
    if n == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=n):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


# ---------------------------------------------------------------------------
# Text parsing helper shared with the polynomial module.


def _parse_int_terms(text: str, var: str) -> dict[int, int]:
    """Parse terms like 'c*VAR^e' joined by '+'/'-' into {exponent: coefficient}."""
    s = text.replace("−", "-").replace(" ", "")
    if not s:
        raise ParseError("empty expression")
    out: dict[int, int] = {}
    for term in s.replace("-", "+-").split("+"):
        if not term:
            continue
        try:
            if var in term:
                head, _, tail = term.partition(var)
                if head in ("", "-"):
                    coeff = -1 if head == "-" else 1
                else:
                    coeff = int(head[:-1] if head.endswith("*") else head)
                if tail == "":
                    exp = 1
                elif tail.startswith("^"):
                    exp = int(tail[1:])
                else:
                    raise ValueError
            else:
                coeff, exp = int(term), 0
        except ValueError:
            raise ParseError(f"bad term {term!r} in {text!r}") from None
        if exp < 0:
            raise ParseError(f"negative exponent in {term!r}")
        out[exp] = out.get(exp, 0) + coeff
    return out


# ---------------------------------------------------------------------------


class Field:
    """A finite field F_{p^n}, with n = 1 meaning the prime field F_p.

    Construct through :func:`prime_field`, :func:`extension_field`, or
    :func:`parse_field`; the constructor itself validates everything and is
    safe to call directly.  Immutable after construction.
    """

    __slots__ = ("p", "n", "modulus", "_elements")

    def __init__(self, p: int, n: int = 1, modulus: tuple[int, ...] | None = None):
        if not isinstance(p, int) or not is_prime(p):
            raise NotPrimeError(f"characteristic {p!r} is not prime")
        if not isinstance(n, int) or n < 1:
            raise ParseError(f"extension degree must be a positive integer, got {n!r}")
        if n == 1:
            modulus = None
        else:
            if modulus is None:
                modulus = _smallest_irreducible(p, n)
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise NotIrreducibleError(
                    f"modulus must be monic of degree {n}, got degree {len(modulus) - 1}")
            if not _is_irreducible(list(modulus), p):
                raise NotIrreducibleError(
                    f"{_render_terms(modulus, 't')} is reducible over F_{p}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_elements", None)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    # -- identity ----------------------------------------------------------

    @property
    def order(self) -> int:
        return self.p ** self.n

    def __eq__(self, other) -> bool:
        return (isinstance(other, Field) and self.p == other.p
                and self.n == other.n and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.n, self.modulus))

    def __str__(self) -> str:
        if self.n == 1:
            return str(self.p)
        return f"{self.p}^{self.n}/{_render_terms(self.modulus, 't')}"

    def __repr__(self) -> str:
        return f"Field({self})"

    # -- element constructors ----------------------------------------------

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.n)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.n - 1))

    def element(self, value) -> FieldElem:
        """Build an element from an integer (constant embed), coefficient
        sequence, or an existing element of this field."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatchError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, int):
            return FieldElem(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.n:
            raise ParseError(f"need {self.n} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    def from_index(self, i: int) -> FieldElem:
        """Element number i in the canonical enumeration (base-p digits,
        coeffs[0] least significant)."""
        if not 0 <= i < self.order:
            raise ParseError(f"index {i} out of range for {self}")
        coeffs = []
        for _ in range(self.n):
            coeffs.append(i % self.p)
            i //= self.p
        return FieldElem(self, tuple(coeffs))

    def parse_element(self, text: str) -> FieldElem:
        terms = _parse_int_terms(text, "t")
        coeffs = [0] * self.n
        for exp, c in terms.items():
            if exp >= self.n:
                raise ParseError(
                    f"{text!r}: exponent {exp} outside the power basis of {self}")
            coeffs[exp] = (coeffs[exp] + c) % self.p
        return FieldElem(self, tuple(coeffs))

    # -- enumeration and subfields -------------------------------------------

    def elements(self) -> tuple[FieldElem, ...]:
        """All p^n elements in canonical order; cached, deterministic."""
        if self._elements is None:
            elems = tuple(self.from_index(i) for i in range(self.order))
            object.__setattr__(self, "_elements", elems)
        return self._elements

    def subfield(self, m: int) -> tuple[FieldElem, ...]:
        """The unique subfield of order p^m: fixed points of the m-fold
        Frobenius a -> a^(p^m).  Canonical order."""
        if not isinstance(m, int) or m < 1 or self.n % m != 0:
            raise NotDivisorError(f"{m} does not divide extension degree {self.n}")
        q_m = self.p ** m
        return tuple(a for a in self.elements() if a ** q_m == a)

    # -- arithmetic backends (called by FieldElem dunders) -------------------

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        if self.n == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _vec_mul(list(a), list(b), self.p)
        red = _vec_mod(prod, list(self.modulus), self.p)
        return tuple(red) + (0,) * (self.n - len(red))

    def _inv(self, a: tuple[int, ...]) -> tuple[int, ...]:
        if all(c == 0 for c in a):
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.n == 1:
            return (pow(a[0], self.p - 2, self.p),)
        inv = _vec_inverse_mod(list(a), list(self.modulus), self.p)
        return tuple(inv) + (0,) * (self.n - len(inv))


class FieldElem:
    """An element of a :class:`Field`, stored as a reduced coefficient tuple.

    Immutable and hashable; arithmetic via the usual operators.  Mixing
    operands from different fields raises :class:`FieldMismatchError`;
    plain ints are embedded as constants.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            f = self.field
            if other.field is f or other.field == f:
                return other
            raise FieldMismatchError(f"{other.field} element used in {self.field}")
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElem(self.field,
                         tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FieldElem(self.field,
                         tuple((a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.field, self.field._mul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer; use inverse()")
        acc = self.field.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, self.field._inv(self.coeffs))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.field.element(other)
        return (isinstance(other, FieldElem) and self.coeffs == other.coeffs
                and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.n, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def index(self) -> int:
        """Position in the canonical enumeration of the field."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * self.field.p + c
        return acc

    def __str__(self) -> str:
        if self.field.n == 1:
            return str(self.coeffs[0])
        return _render_terms(self.coeffs, "t")

    def __repr__(self) -> str:
        return f"FieldElem({self.field}, {self})"


def _render_terms(coeffs, var: str) -> str:
    """Render a coefficient tuple (index = exponent) as 'c*VAR^e' terms,
    highest exponent first."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            head = "" if c == 1 else f"{c}*"
            parts.append(f"{head}{var}" if e == 1 else f"{head}{var}^{e}")
    return "+".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Public constructors.


def prime_field(p: int) -> Field:
    """The prime field F_p; rejects composite p."""
    return Field(p)


def extension_field(p: int, n: int, modulus=None) -> Field:
    """F_{p^n}.  With ``modulus`` omitted the lexicographically smallest monic
    irreducible of degree n is chosen (coefficient tuples compared
    low-degree-first), so construction is reproducible without tables.

    ``modulus`` may be a coefficient sequence (index = degree), a text form
    like "t^2+1", or a polynomial over F_p.
    """
    if modulus is not None:
        modulus = _modulus_coeffs(modulus, p)
    return Field(p, n, modulus)


def _modulus_coeffs(modulus, p: int) -> tuple[int, ...]:
    if isinstance(modulus, str):
        terms = _parse_int_terms(modulus, "t")
        deg = max(terms)
        vec = [0] * (deg + 1)
        for e, c in terms.items():
            vec[e] = (vec[e] + c) % p
        return tuple(vec)
    coeffs = getattr(modulus, "coeffs", modulus)
    out = []
    for c in coeffs:
        if isinstance(c, FieldElem):
            if c.field.n != 1 or c.field.p != p:
                raise FieldMismatchError("modulus coefficients must lie in the prime field")
            out.append(c.coeffs[0])
        else:
            out.append(int(c) % p)
    return tuple(out)


def parse_field(text: str) -> Field:
    """Parse "p", "p^n", or "p^n/modulus" (e.g. "3^2/t^2+1")."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty field description")
    head, slash, mod_text = s.partition("/")
    try:
        if "^" in head:
            p_text, _, n_text = head.partition("^")
            p, n = int(p_text), int(n_text)
        else:
            p, n = int(head), 1
    except ValueError:
        raise ParseError(f"bad field description {text!r}") from None
    if slash and n == 1:
        raise ParseError(f"{text!r}: modulus given for a prime field")
    return extension_field(p, n, mod_text if slash else None)


def canonical_sort(elems) -> tuple[FieldElem, ...]:
    """Sort elements by their canonical enumeration index."""
    return tuple(sorted(elems, key=lambda e: e.index()))
