"""Brute-force experiments: extremal searches and subfield sharpness runs.

Two drivers share one record format.

:func:`search_extremal` enumerates or samples pairs (A, B), measures the
exact image size against the proved bound, and returns the records sorted
by slack ascending so near-extremal configurations surface first.
Evaluation is pure and the merge is a canonical sort, so output is
byte-identical for any worker count.

:func:`subfield_experiment` probes how far the bound is from sharp when B
is a subfield K plus one external point.  With coefficients of g and h in
K and A inside K minus the roots of h, the image over B = K stays inside
K (no growth); appending one point theta forces growth.  Each record
carries the proved growth threshold floor((1 + c/2) p^m - 1), the
conjectured one floor((1 + c) p^m - 1) which is reported but never
asserted, and the distance from B to the nearest subfield.

A record with negative slack would disprove the bound; the harness treats
it as a fatal internal error and dumps the witness configuration.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import bound as bound_mod
from .errors import (
    BudgetExceededError,
    InternalInvariantError,
    InvalidParametersError,
    NotProperDivisorError,
)
from .field import Field, canonical_sort, parse_field
from .poly import parse_poly
from .rng import Xoshiro256StarStar

CSV_COLUMNS = ("field", "g", "h", "a", "b", "image_size", "theorem_bound",
               "slack", "proved_threshold", "conjectured_threshold",
               "subfield_distance", "subfield_order")

DEFAULT_BUDGET = 10_000_000

_CHUNK = 1024


@dataclass(frozen=True)
class ExperimentRecord:
    """One measured (A, B) configuration.

    ``slack`` is image_size minus the proved bound and is nonnegative for
    every valid instance.  The threshold columns are populated only by
    subfield experiments; ``subfield_distance``/``subfield_order`` locate
    the subfield nearest to B by symmetric difference.
    """

    field: str
    g: str
    h: str
    a: int
    b: int
    image_size: int
    theorem_bound: int
    slack: int
    proved_threshold: int | None
    conjectured_threshold: int | None
    subfield_distance: int | None
    subfield_order: int | None
    A: tuple[str, ...]
    B: tuple[str, ...]

    def to_row(self) -> list:
        return ["" if (v := getattr(self, name)) is None else v
                for name in CSV_COLUMNS]

    def to_dict(self) -> dict:
        out = {name: getattr(self, name) for name in CSV_COLUMNS}
        out["A"] = list(self.A)
        out["B"] = list(self.B)
        return out


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(r.to_row())
    return buf.getvalue()


def records_to_json(records) -> str:
    return json.dumps([r.to_dict() for r in records], indent=2) + "\n"


@dataclass(frozen=True)
class SearchConfig:
    """Parameters for :func:`search_extremal`.

    ``a`` and ``b`` are a single size or an inclusive (lo, hi) range.
    ``mode`` is "exhaustive" or "random"; random mode draws
    ``sample_count`` pairs per (a, b) cell from the seeded generator.
    ``budget`` caps the number of pairs the run may touch; exhaustive mode
    estimates its cost as sum of binom(q, a) * binom(q, b) over cells.
    """

    field: str
    g: str
    h: str
    a: object
    b: object
    mode: str = "exhaustive"
    sample_count: int = 100
    seed: int = 0
    parallelism: int = 1
    budget: int = DEFAULT_BUDGET


def _size_list(v, limit: int, name: str) -> list[int]:
    """Sizes clipped to [1, limit]; an unreachable request yields an empty
    list (no valid sets of that size), not an error."""
    if isinstance(v, int):
        sizes = [v]
    else:
        lo, hi = v
        if lo < 1 or hi < lo:
            raise InvalidParametersError(f"bad {name} range ({lo}, {hi})")
        sizes = list(range(lo, hi + 1))
    if any(s < 1 for s in sizes):
        raise InvalidParametersError(f"{name} sizes must be >= 1")
    return [s for s in sizes if s <= limit]


def _subfield_index_sets(field: Field) -> list[tuple[int, frozenset]]:
    out = []
    for m in range(1, field.n + 1):
        if field.n % m == 0:
            out.append((field.p ** m,
                        frozenset(x.index() for x in field.subfield(m))))
    return out


def _nearest_distance(b_indices, subfield_sets) -> tuple[int, int]:
    b_set = frozenset(b_indices)
    best = None
    for order, k_set in subfield_sets:
        dist = len(b_set ^ k_set)
        if best is None or dist < best[0] or (dist == best[0] and order > best[1]):
            best = (dist, order)
    return best


def nearest_subfield_distance(B, field: Field) -> tuple[int, int]:
    """(distance, order) of the subfield minimizing the symmetric
    difference with B; ties go to the larger subfield."""
    indices = [field.element(y).index() for y in B]
    return _nearest_distance(indices, _subfield_index_sets(field))


def _negative_slack_dump(field_s, g_s, h_s, A, B, size, tb):
    return InternalInvariantError(
        f"negative slack {size - tb}: image_size {size} below bound {tb} "
        f"for field={field_s} g={g_s} h={h_s} "
        f"A={{{','.join(A)}}} B={{{','.join(B)}}}")


def search_extremal(config: SearchConfig) -> list[ExperimentRecord]:
    field = parse_field(config.field)
    g = parse_poly(config.g, field)
    h = parse_poly(config.h, field)
    if h.is_zero() or not g.degree() > h.degree() or g.degree() < 1:
        raise InvalidParametersError(
            f"need deg g > deg h with g non-constant and h nonzero; "
            f"got deg g = {g.degree()}, deg h = {h.degree()}")
    if config.mode not in ("exhaustive", "random"):
        raise InvalidParametersError(f"unknown mode {config.mode!r}")
    if config.parallelism < 1:
        raise InvalidParametersError(
            f"parallelism must be >= 1, got {config.parallelism}")
    if config.mode == "random" and config.sample_count < 1:
        raise InvalidParametersError(
            f"sample_count must be >= 1, got {config.sample_count}")

    elements = field.elements()
    g_table = tuple(g(x) for x in elements)
    h_table = tuple(h(x) for x in elements)
    pool_a = tuple(x.index() for x in elements if not h(x).is_zero())
    q = field.order

    a_sizes = _size_list(config.a, len(pool_a), "a")
    b_sizes = _size_list(config.b, q, "b")
    cells = [(a, b) for a in a_sizes for b in b_sizes]
    if not cells:
        return []

    if config.mode == "exhaustive":
        cost = sum(math.comb(q, a) * math.comb(q, b) for a, b in cells)
    else:
        cost = len(cells) * config.sample_count
    if cost > config.budget:
        raise BudgetExceededError(
            f"run needs {cost} pairs but the budget is {config.budget}; "
            f"narrow the ranges or switch to random mode")

    field_s, g_s, h_s = str(field), str(g), str(h)
    bounds = {(a, b): bound_mod.theorem_bound(a, b, g.degree(), field.p).bound
              for a, b in cells}
    subfield_sets = _subfield_index_sets(field)

    def tasks():
        if config.mode == "exhaustive":
            for a, b in cells:
                for A_idx in itertools.combinations(pool_a, a):
                    for B_idx in itertools.combinations(range(q), b):
                        yield A_idx, B_idx
        else:
            rng = Xoshiro256StarStar(config.seed)
            for a, b in cells:
                for _ in range(config.sample_count):
                    A_pos = rng.sample_indices(len(pool_a), a)
                    A_idx = tuple(pool_a[i] for i in A_pos)
                    B_idx = rng.sample_indices(q, b)
                    yield A_idx, B_idx

    def evaluate(task):
        A_idx, B_idx = task
        img = set()
        for i in A_idx:
            gx, hx = g_table[i], h_table[i]
            for j in B_idx:
                img.add(gx + elements[j] * hx)
        size = len(img)
        tb = bounds[(len(A_idx), len(B_idx))]
        A_s = tuple(str(elements[i]) for i in A_idx)
        B_s = tuple(str(elements[j]) for j in B_idx)
        if size < tb:
            raise _negative_slack_dump(field_s, g_s, h_s, A_s, B_s, size, tb)
        dist, order = _nearest_distance(B_idx, subfield_sets)
        rec = ExperimentRecord(field_s, g_s, h_s, len(A_idx), len(B_idx),
                               size, tb, size - tb, None, None, dist, order,
                               A_s, B_s)
        return (size - tb, len(A_idx), len(B_idx), A_idx, B_idx), rec

    def eval_chunk(chunk):
        return [evaluate(t) for t in chunk]

    keyed = []
    if config.parallelism == 1:
        for task in tasks():
            keyed.append(evaluate(task))
    else:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            for part in pool.map(eval_chunk, _chunked(tasks(), _CHUNK)):
                keyed.extend(part)
    keyed.sort(key=lambda kr: kr[0])
    return [rec for _, rec in keyed]


def _chunked(iterable, size):
    it = iter(iterable)
    while True:
        chunk = list(itertools.islice(it, size))
        if not chunk:
            return
        yield chunk


def subfield_experiment(field, m: int, c_fraction, g: str = "x^2",
                        h: str = "x", theta_count: int | None = None,
                        seed: int = 0, random_a: bool = False,
                        parallelism: int = 1) -> list[ExperimentRecord]:
    """Image growth when B is the order-p^m subfield K plus one point.

    A is ceil(c * p^m) elements of K minus {0} and the roots of h, clipped
    to what exists: the first ones in canonical order by default, or a
    seeded random subset with ``random_a``.  The first record is the
    baseline B = K; the rest sweep theta over the complement of K in
    canonical order, or over a seeded sample of ``theta_count`` of them.
    Thresholds appear only on the theta records; the baseline has nothing
    to exceed.
    """
    if isinstance(field, str):
        field = parse_field(field)
    if not isinstance(m, int) or m < 1 or m >= field.n or field.n % m != 0:
        raise NotProperDivisorError(
            f"m = {m} must properly divide the extension degree {field.n}")
    c = Fraction(c_fraction)
    if not 0 < c < 1:
        raise InvalidParametersError(f"c must satisfy 0 < c < 1, got {c}")
    if parallelism < 1:
        raise InvalidParametersError(f"parallelism must be >= 1, got {parallelism}")
    g_poly = parse_poly(g, field)
    h_poly = parse_poly(h, field)
    if h_poly.is_zero() or not g_poly.degree() > h_poly.degree() or g_poly.degree() < 1:
        raise InvalidParametersError(
            f"need deg g > deg h with g non-constant and h nonzero; "
            f"got deg g = {g_poly.degree()}, deg h = {h_poly.degree()}")

    rng = Xoshiro256StarStar(seed)
    K = field.subfield(m)
    q_m = field.p ** m
    pool = [x for x in K if not x.is_zero() and not h_poly(x).is_zero()]
    if not pool:
        raise InvalidParametersError("no usable subfield elements for A")
    a = min(math.ceil(c * q_m), len(pool))
    if random_a:
        picks = rng.sample_indices(len(pool), a)
        A = tuple(pool[i] for i in picks)
    else:
        A = tuple(pool[:a])

    proved = math.floor((1 + c / 2) * q_m - 1)
    conjectured = math.floor((1 + c) * q_m - 1)
    field_s, g_s, h_s = str(field), str(g_poly), str(h_poly)
    subfield_sets = _subfield_index_sets(field)

    def record(B, with_thresholds: bool) -> ExperimentRecord:
        inst = bound_mod.ExpanderInstance(field, g_poly, h_poly, A, B)
        size = len(bound_mod.image(inst))
        tb = inst.bound_report().bound
        A_s = tuple(str(x) for x in A)
        B_s = tuple(str(y) for y in B)
        if size < tb:
            raise _negative_slack_dump(field_s, g_s, h_s, A_s, B_s, size, tb)
        dist, order = _nearest_distance((y.index() for y in B), subfield_sets)
        return ExperimentRecord(
            field_s, g_s, h_s, a, len(B), size, tb, size - tb,
            proved if with_thresholds else None,
            conjectured if with_thresholds else None,
            dist, order, A_s, B_s)

    K_set = set(K)
    thetas = [x for x in field.elements() if x not in K_set]
    if theta_count is not None:
        if not 1 <= theta_count <= len(thetas):
            raise InvalidParametersError(
                f"theta_count = {theta_count} outside [1, {len(thetas)}]")
        picks = rng.sample_indices(len(thetas), theta_count)
        thetas = [thetas[i] for i in picks]

    def theta_record(theta):
        return record(canonical_sort(K + (theta,)), True)

    records = [record(K, False)]
    if parallelism == 1 or len(thetas) <= 1:
        records.extend(theta_record(theta) for theta in thetas)
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool_ex:
            records.extend(pool_ex.map(theta_record, thetas))
    return records
