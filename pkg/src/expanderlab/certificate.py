"""Constructive certificates for the image-set lower bound.

The bound on {g(x) + y*h(x)} rests on one algebraic identity.  For any
size-k duplicate-free C in the field, expand

    P(x, y) = prod_{c in C} (g(x) + y*h(x) - c)
            = sum_{i+j <= k} lambda_{i,j} g(x)^i h(x)^j y^j,

with lambda_{i,j} = (-1)^(k-i-j) e_{k-i-j}(C) binom(i+j, j); e_r is the
elementary symmetric polynomial.  Pick weights beta on B with

    sum_y beta(y) y^j = delta_{j, b-1}        (j = 0 .. b-1)

and weights alpha on A with

    sum_x alpha(x) h(x)^(b-1) x^i = delta_{i, D}   (i = 0 .. D),

where D = d*(k - b + 1) and d = deg g.  Then the weighted sum
sum_{x,y} alpha(x) beta(y) P(x, y) collapses: every term except
(i, j) = (k-b+1, b-1) dies against a moment condition or a degree drop,
leaving binom(k, b-1) * M^(k-b+1) with M the leading coefficient of g.
That value is independent of C and nonzero for admissible k.  If C
covered the whole image, P would vanish on all of A x B and the sum would
be zero instead; so no admissible-size C covers the image.

:func:`build_certificate` materializes alpha, beta, the lambda table, and
both sides of the identity so a third party can replay every equation
with field arithmetic alone.  :func:`refute_cover` turns the identity
into an explicit counterexample to a proposed cover.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bound import ExpanderInstance, lucas_nonvanishing
from .errors import (
    EmptySetError,
    FieldMismatchError,
    InadmissibleKError,
    InternalInvariantError,
    InvalidParametersError,
    TargetDegreeTooLargeError,
)
from .field import Field, FieldElem, canonical_sort
from .poly import Poly


def binomial_in_field(field: Field, k: int, r: int) -> FieldElem:
    """binom(k, r) as an exact integer reduced into the field."""
    if r < 0 or r > k:
        return field.zero()
    return field.element(math.comb(k, r) % field.p)


def elementary_symmetric(field: Field, values) -> tuple[FieldElem, ...]:
    """(e_0, e_1, ..., e_k) of the given values, e_0 = 1.  Standard one-row
    dynamic program; exact field arithmetic."""
    e = [field.one()]
    for v in values:
        v = field.element(v)
        e.append(field.zero())
        for i in range(len(e) - 1, 0, -1):
            e[i] = e[i] + v * e[i - 1]
    return tuple(e)


def lambda_coefficients(C, g: Poly, h: Poly) -> dict:
    """{(i, j): lambda_{i,j}} for all i, j >= 0 with i + j <= k = |C|.

    g and h fix the field and are checked for consistency with C; the
    values themselves depend only on C.  Requires a nonempty C.
    """
    if g.field != h.field:
        raise FieldMismatchError("g and h live over different fields")
    field = g.field
    C = canonical_sort(field.element(c) for c in C)
    if not C:
        raise EmptySetError("C is empty")
    if len(set(C)) != len(C):
        raise InvalidParametersError("C has repeated elements")
    k = len(C)
    e = elementary_symmetric(field, C)
    out = {}
    for s in range(k + 1):
        sign_e = e[k - s] if (k - s) % 2 == 0 else -e[k - s]
        for j in range(s + 1):
            out[(s - j, j)] = sign_e * binomial_in_field(field, s, j)
    return out


def _solve_linear(rows, rhs):
    """Solve a square system by Gauss-Jordan elimination with the first
    nonzero pivot in column order.  Exact; raises if singular."""
    n = len(rows)
    field = rhs[0].field
    m = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            raise InternalInvariantError("singular system in certificate solver")
        m[col], m[pivot] = m[pivot], m[col]
        inv = m[col][col].inverse()
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                factor = m[r][col]
                m[r] = [v - factor * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def solve_beta(B) -> dict:
    """Weights {y: beta(y)} on B with sum_y beta(y) y^j = delta_{j, b-1}
    for j = 0 .. b-1.  The Vandermonde determinant over distinct points is
    nonzero, so the solution exists and is unique."""
    B = canonical_sort(B)
    if not B:
        raise EmptySetError("B is empty")
    field = B[0].field
    b = len(B)
    rows = [[y ** j for y in B] for j in range(b)]
    rhs = [field.one() if j == b - 1 else field.zero() for j in range(b)]
    sol = _solve_linear(rows, rhs)
    return dict(zip(B, sol))


def solve_alpha(A, h: Poly, b: int, target_degree: int) -> dict:
    """Weights {x: alpha(x)} on A with
    sum_x alpha(x) h(x)^(b-1) x^i = delta_{i, D} for i = 0 .. D.

    The system is underdetermined when |A| > D + 1; the convention is to
    support alpha on the first D + 1 elements of A in canonical order,
    solve the square Vandermonde system for u(x) = alpha(x) h(x)^(b-1),
    and set the remaining weights to zero (still present in the result).
    Requires D <= |A| - 1 and h nonvanishing on A.
    """
    A = canonical_sort(A)
    if not A:
        raise EmptySetError("A is empty")
    if b < 1:
        raise InvalidParametersError(f"need b >= 1, got {b}")
    D = target_degree
    if D < 0:
        raise InvalidParametersError(f"target degree must be >= 0, got {D}")
    if D > len(A) - 1:
        raise TargetDegreeTooLargeError(
            f"target degree {D} needs {D + 1} points but |A| = {len(A)}")
    field = A[0].field
    support = A[:D + 1]
    scale = []
    for x in support:
        hx = h(x)
        if hx.is_zero():
            raise InvalidParametersError(f"h vanishes at {x}, alpha system is singular")
        scale.append(hx ** (b - 1))
    rows = [[x ** i for x in support] for i in range(D + 1)]
    rhs = [field.one() if i == D else field.zero() for i in range(D + 1)]
    u = _solve_linear(rows, rhs)
    out = {x: ui * s.inverse() for x, ui, s in zip(support, u, scale)}
    for x in A[D + 1:]:
        out[x] = field.zero()
    return out


def verify_beta(beta: dict, B, b: int) -> bool:
    """Replay the beta moment conditions over B by direct summation."""
    B = canonical_sort(B)
    if not B or b < 1 or len(B) != b or any(y not in beta for y in B):
        return False
    field = B[0].field
    for j in range(b):
        total = field.zero()
        for y in B:
            total = total + beta[y] * y ** j
        want = field.one() if j == b - 1 else field.zero()
        if total != want:
            return False
    return True


def verify_alpha(alpha: dict, A, h: Poly, b: int, target_degree: int) -> bool:
    """Replay the alpha moment conditions over A by direct summation."""
    A = canonical_sort(A)
    if not A or b < 1 or target_degree < 0 or any(x not in alpha for x in A):
        return False
    field = A[0].field
    for i in range(target_degree + 1):
        total = field.zero()
        for x in A:
            total = total + alpha[x] * h(x) ** (b - 1) * x ** i
        want = field.one() if i == target_degree else field.zero()
        if total != want:
            return False
    return True


def _pointwise_sum(field, g, h, A, B, C, alpha, beta):
    total = field.zero()
    for x in A:
        ax = alpha[x]
        if ax.is_zero():
            continue
        gx, hx = g(x), h(x)
        for y in B:
            w = gx + y * hx
            prod = field.one()
            for c in C:
                prod = prod * (w - c)
            total = total + ax * beta[y] * prod
    return total


@dataclass(frozen=True)
class Certificate:
    """A fully materialized instance of the collapsing identity.

    ``lambda_table`` keeps nonzero entries only; ``elementary_symmetric``
    is the full vector e_0 .. e_k over C.
    """

    instance: ExpanderInstance
    C: tuple
    k: int
    elementary_symmetric: tuple
    lambda_table: dict
    beta: dict
    alpha: dict
    predicted: FieldElem
    pointwise: FieldElem

    @property
    def identity_holds(self) -> bool:
        return self.predicted == self.pointwise

    def to_dict(self) -> dict:
        inst = self.instance
        return {
            "field": str(inst.field),
            "g": str(inst.g),
            "h": str(inst.h),
            "A": [str(x) for x in inst.A],
            "B": [str(y) for y in inst.B],
            "C": [str(c) for c in self.C],
            "alpha": {str(x): str(self.alpha[x]) for x in inst.A},
            "beta": {str(y): str(self.beta[y]) for y in inst.B},
            "predicted": str(self.predicted),
            "pointwise": str(self.pointwise),
            "identity_holds": self.identity_holds,
        }


def _check_admissible(instance: ExpanderInstance, k: int) -> None:
    report = instance.bound_report()
    b = instance.b
    if k < b - 1 or k > report.k_max_range:
        raise InadmissibleKError(
            f"k = {k} fails the range condition [{b - 1}, {report.k_max_range}]",
            reason="range")
    if not lucas_nonvanishing(k, b - 1, instance.field.p):
        raise InadmissibleKError(
            f"k = {k} fails the Lucas condition: binom({k}, {b - 1}) vanishes "
            f"in characteristic {instance.field.p}", reason="lucas")


def build_certificate(instance: ExpanderInstance, C) -> Certificate:
    """Construct alpha, beta, the lambda table, and both sides of the
    identity for the given candidate set C (any size-k set works and
    yields the same predicted value; k = |C| must be admissible)."""
    field = instance.field
    C = canonical_sort(field.element(c) for c in C)
    if len(set(C)) != len(C):
        raise InvalidParametersError("C has repeated elements")
    k = len(C)
    _check_admissible(instance, k)
    if k > field.order - 1:
        # Unreachable: admissible k <= q-1 whenever A, B are subsets of F_q.
        raise InternalInvariantError(f"admissible k = {k} exceeds |F| - 1")
    g, h, b, d = instance.g, instance.h, instance.b, instance.d
    D = d * (k - b + 1)
    e = elementary_symmetric(field, C)
    if k >= 1:
        lam = {key: v for key, v in lambda_coefficients(C, g, h).items()
               if not v.is_zero()}
    else:
        lam = {(0, 0): field.one()}
    beta = solve_beta(instance.B)
    alpha = solve_alpha(instance.A, h, b, D)
    M = g.leading_coefficient()
    predicted = binomial_in_field(field, k, b - 1) * M ** (k - b + 1)
    if predicted.is_zero():
        raise InternalInvariantError(
            "predicted value vanished despite the Lucas check")
    pointwise = _pointwise_sum(field, g, h, instance.A, instance.B, C, alpha, beta)
    return Certificate(instance, C, k, e, lam, beta, alpha, predicted, pointwise)


@dataclass(frozen=True)
class RefutationReport:
    """Evidence that a proposed size-k cover C cannot contain the image."""

    certificate: Certificate
    covers: bool
    witness_x: FieldElem
    witness_y: FieldElem
    witness_value: FieldElem

    def to_dict(self) -> dict:
        out = self.certificate.to_dict()
        out["covers"] = self.covers
        out["witness_x"] = str(self.witness_x)
        out["witness_y"] = str(self.witness_y)
        out["witness_value"] = str(self.witness_value)
        return out


def refute_cover(instance: ExpanderInstance, C) -> RefutationReport:
    """Show that the proposed C (of admissible size) misses an image value.

    The certificate's sum over A x B equals a nonzero constant; if C
    contained every g(x) + y*h(x), each product would carry a vanishing
    factor and the sum would be zero.  So a witness pair (x, y) whose
    value escapes C must exist; the first one in canonical order is
    returned.  C covering the image would contradict the identity and is
    reported as an internal error.
    """
    cert = build_certificate(instance, C)
    c_set = set(cert.C)
    g, h = instance.g, instance.h
    witness = None
    for x in instance.A:
        gx, hx = g(x), h(x)
        for y in instance.B:
            w = gx + y * hx
            if w not in c_set and witness is None:
                witness = (x, y, w)
    if witness is None:
        raise InternalInvariantError(
            "C covers the image yet the collapsing sum is nonzero")
    return RefutationReport(cert, False, *witness)
