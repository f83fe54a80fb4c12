"""Domain types, validation, and the exact enumeration engine.

The engine walks all 2^n sign assignments in reflected-binary (Gray) order,
so consecutive assignments differ in exactly one sign and the running sum is
updated in O(d) scalar operations per step.  Enumeration is organised in
prefix blocks whose structure depends only on n, never on the worker count,
which makes every integer field of the result bitwise reproducible no matter
how the blocks are scheduled.

Classification at radius r is closed-ball with a tolerance band: an
assignment is a hit when norm^2 <= r^2 + tol.  Assignments whose norm^2 lies
within tol of r^2 sit exactly on the decision boundary as far as the policy
can tell; the report's ``margin`` field is the smallest gap |norm^2 - r^2|
over all assignments outside that band (0.0 if every assignment is inside),
so callers can judge how trustworthy the hit count is.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NormViolation, OutOfRange, TooLarge
from .precision import PrecisionPolicy

ENUMERATION_CAP = 30

# Gray suffix width per block; the block split depends only on n.
_SUFFIX_BITS = 14

_MODES = ("strict", "beck")


@dataclass(frozen=True)
class SignAssignment:
    """One sign per vector, each -1 or +1."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if len(self.signs) == 0:
            raise ValueError("empty sign assignment")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be -1 or +1")

    def __len__(self):
        return len(self.signs)

    def __iter__(self):
        return iter(self.signs)

    def lex_key(self) -> tuple[int, ...]:
        """Lexicographic rank with +1 ordered before -1."""
        return tuple(0 if s > 0 else 1 for s in self.signs)

    def negated(self) -> "SignAssignment":
        return SignAssignment(tuple(-s for s in self.signs))


@dataclass(frozen=True)
class CoefficientVector:
    """Relaxed coefficients, each in [-1, +1]."""

    coefficients: tuple[float, ...]

    def __post_init__(self):
        for i, c in enumerate(self.coefficients):
            if not -1.0 <= c <= 1.0:
                raise OutOfRange(f"coefficient {i} = {c!r} outside [-1, 1]")

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=float)


@dataclass(frozen=True)
class VectorConfig:
    """An ordered sequence of n vectors in R^d with unit-norm metadata.

    ``strict`` mode requires every norm to lie within ``norm_tolerance`` of 1;
    ``beck`` mode only requires norms <= 1 + norm_tolerance.  Entries may be
    floats or mpmath scalars (extended-precision constructions); validation
    measures norms in double, which is far below the default tolerance.
    """

    dim: int
    vectors: tuple[tuple, ...]
    mode: str = "strict"
    norm_tolerance: float = 1e-9

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        if len(self.vectors) < 1:
            raise ValueError("configuration must contain at least one vector")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}")
        if self.norm_tolerance < 0:
            raise ValueError("norm tolerance must be nonnegative")
        for i, row in enumerate(self.vectors):
            if len(row) != self.dim:
                raise DimensionMismatch(
                    f"vector {i} has dimension {len(row)}, expected {self.dim}"
                )
            norm = float(sum(float(x) * float(x) for x in row)) ** 0.5
            if self.mode == "strict":
                if abs(norm - 1.0) > self.norm_tolerance:
                    raise NormViolation(i, norm)
            else:
                if norm > 1.0 + self.norm_tolerance:
                    raise NormViolation(i, norm, f"vector {i} has norm {norm!r} > 1")

    @property
    def n(self) -> int:
        return len(self.vectors)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.vectors], dtype=float)

    def replaced(self, index: int, vector) -> "VectorConfig":
        rows = list(self.vectors)
        rows[index] = tuple(vector)
        return VectorConfig(self.dim, tuple(rows), self.mode, self.norm_tolerance)


@dataclass(frozen=True)
class EnumerationReport:
    """Exact census of the 2^n signed sums against a radius."""

    total: int
    hits: int
    radius: object
    probability: Fraction
    min_norm: object
    argmin: SignAssignment
    margin: float

    def __post_init__(self):
        if not 0 <= self.hits <= self.total:
            raise ValueError("hit count outside [0, total]")
        if self.probability != Fraction(self.hits, self.total):
            raise ValueError("probability must be exactly hits/total")


def validate_config(raw_vectors, mode: str = "strict", tolerance: float = 1e-9) -> VectorConfig:
    """Validate raw vectors into a VectorConfig; never silently renormalizes.

    Entries that are Python/numpy numbers are normalised to float; other
    scalar types (mpmath mpf) are kept as given.
    """
    rows = [tuple(_coerce_entry(x) for x in row) for row in raw_vectors]
    if not rows:
        raise ValueError("configuration must contain at least one vector")
    dim = len(rows[0])
    return VectorConfig(dim=dim, vectors=tuple(rows), mode=mode, norm_tolerance=tolerance)


def _coerce_entry(x):
    if isinstance(x, (int, float, np.integer, np.floating)):
        return float(x)
    return x


def signed_sum(config: VectorConfig, signs: SignAssignment, policy: PrecisionPolicy | None = None):
    """Return sum_i eta_i v_i as a tuple of scalars in the policy's arithmetic."""
    if len(signs) != config.n:
        raise DimensionMismatch(
            f"{len(signs)} signs for {config.n} vectors"
        )
    policy = policy or PrecisionPolicy.double()
    ctx = policy.context()
    with ctx.active():
        rows = [[ctx.scalar(x) for x in row] for row in config.vectors]
        acc = list(rows[0]) if signs.signs[0] > 0 else [-x for x in rows[0]]
        for eta, row in zip(signs.signs[1:], rows[1:]):
            if eta > 0:
                for k in range(config.dim):
                    acc[k] = acc[k] + row[k]
            else:
                for k in range(config.dim):
                    acc[k] = acc[k] - row[k]
        return tuple(acc)


class _BlockResult:
    __slots__ = ("hits", "margin", "best_order", "best_key", "best_signs", "best_ns")

    def __init__(self, hits, margin, best_order, best_key, best_signs, best_ns):
        self.hits = hits
        self.margin = margin
        self.best_order = best_order
        self.best_key = best_key
        self.best_signs = best_signs
        self.best_ns = best_ns


def _prefix_bits(n: int) -> int:
    return max(0, n - _SUFFIX_BITS)


def _block_signs(n: int, p: int, block: int) -> list[int]:
    # Prefix bit i (most significant first) encodes the sign of index i,
    # so ascending block numbers give lexicographically ascending prefixes.
    signs = [1] * n
    for i in range(p):
        if (block >> (p - 1 - i)) & 1:
            signs[i] = -1
    return signs


def _run_block_double(vectors, n, d, p, block, radius_sq, tol):
    signs = _block_signs(n, p, block)
    doubled = [[2.0 * x for x in row] for row in vectors]
    s = [0.0] * d
    for i in range(n):
        row = vectors[i]
        if signs[i] > 0:
            for k in range(d):
                s[k] += row[k]
        else:
            for k in range(d):
                s[k] -= row[k]

    hits = 0
    margin = None
    best_order = None
    best_key = None
    best_signs = None
    classify = radius_sq is not None
    for t in range(1 << (n - p)):
        if t:
            j = p + ((t & -t).bit_length() - 1)
            row = doubled[j]
            if signs[j] > 0:
                for k in range(d):
                    s[k] -= row[k]
            else:
                for k in range(d):
                    s[k] += row[k]
            signs[j] = -signs[j]
        ns = s[0] * s[0]
        for k in range(1, d):
            ns += s[k] * s[k]
        if classify:
            if ns <= radius_sq + tol:
                hits += 1
            gap = ns - radius_sq
            if gap < 0.0:
                gap = -gap
            if gap > tol and (margin is None or gap < margin):
                margin = gap
        if best_order is None or ns < best_order:
            best_order = ns
            best_key = tuple(0 if x > 0 else 1 for x in signs)
            best_signs = tuple(signs)
        elif ns == best_order:
            key = tuple(0 if x > 0 else 1 for x in signs)
            if key < best_key:
                best_key = key
                best_signs = tuple(signs)
    return _BlockResult(hits, margin, best_order, best_key, best_signs, best_order)


def _run_block_generic(ctx, vectors, n, d, p, block, radius_sq, tol):
    signs = _block_signs(n, p, block)
    doubled = [[x + x for x in row] for row in vectors]
    zero = ctx.scalar(0)
    s = [zero] * d
    for i in range(n):
        row = vectors[i]
        if signs[i] > 0:
            for k in range(d):
                s[k] = s[k] + row[k]
        else:
            for k in range(d):
                s[k] = s[k] - row[k]

    hits = 0
    margin = None
    best_order = None
    best_key = None
    best_signs = None
    best_ns = None
    classify = radius_sq is not None
    for t in range(1 << (n - p)):
        if t:
            j = p + ((t & -t).bit_length() - 1)
            row = doubled[j]
            if signs[j] > 0:
                for k in range(d):
                    s[k] = s[k] - row[k]
            else:
                for k in range(d):
                    s[k] = s[k] + row[k]
            signs[j] = -signs[j]
        ns = s[0] * s[0]
        for k in range(1, d):
            ns = ns + s[k] * s[k]
        if classify:
            if ctx.classify_hit(ns, radius_sq, tol):
                hits += 1
            gap = ctx.gap(ns, radius_sq)
            if gap > float(tol) and (margin is None or gap < margin):
                margin = gap
        order = _order_value(ctx, ns)
        if best_order is None or order < best_order:
            best_order = order
            best_key = tuple(0 if x > 0 else 1 for x in signs)
            best_signs = tuple(signs)
            best_ns = ns
        elif order == best_order:
            key = tuple(0 if x > 0 else 1 for x in signs)
            if key < best_key:
                best_key = key
                best_signs = tuple(signs)
                best_ns = ns
    return _BlockResult(hits, margin, best_order, best_key, best_signs, best_ns)


def _order_value(ctx, ns):
    # Intervals are ordered by midpoint for min-tracking purposes.
    if ctx.policy.mode == "interval":
        return ctx.to_float(ns)
    return ns


def _walk(config: VectorConfig, policy: PrecisionPolicy, radius, workers: int, cap: int):
    n, d = config.n, config.dim
    if n > cap:
        raise TooLarge(f"n = {n} exceeds the enumeration cap {cap}")
    p = _prefix_bits(n)
    ctx = policy.context()
    with ctx.active():
        if policy.mode == "double":
            vectors = [[float(x) for x in row] for row in config.vectors]
            radius_sq = None
            tol = policy.classification_tolerance
            if radius is not None:
                r = float(radius)
                radius_sq = r * r
            runner = lambda block: _run_block_double(
                vectors, n, d, p, block, radius_sq, tol
            )
        else:
            vectors = [[ctx.scalar(x) for x in row] for row in config.vectors]
            radius_sq = None
            tol = ctx.scalar(policy.classification_tolerance)
            if radius is not None:
                r = ctx.scalar(radius)
                radius_sq = r * r
            runner = lambda block: _run_block_generic(
                ctx, vectors, n, d, p, block, radius_sq, tol
            )

        blocks = range(1 << p)
        if workers > 1 and len(blocks) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(runner, blocks))
        else:
            results = [runner(b) for b in blocks]

        merged = results[0]
        for res in results[1:]:
            merged.hits += res.hits
            if res.margin is not None and (merged.margin is None or res.margin < merged.margin):
                merged.margin = res.margin
            better = res.best_order < merged.best_order or (
                res.best_order == merged.best_order and res.best_key < merged.best_key
            )
            if better:
                merged.best_order = res.best_order
                merged.best_key = res.best_key
                merged.best_signs = res.best_signs
                merged.best_ns = res.best_ns

        # The negation of a minimiser is a minimiser with exactly the same
        # true norm even when rounding hides the tie, so canonicalise toward
        # the lexicographically smaller of the antipodal twins.
        negated = tuple(-s for s in merged.best_signs)
        if tuple(0 if s > 0 else 1 for s in negated) < merged.best_key:
            merged.best_signs = negated
            merged.best_key = tuple(0 if s > 0 else 1 for s in negated)

        if policy.mode == "double":
            min_norm = merged.best_order**0.5
        else:
            min_norm = ctx.sqrt(merged.best_ns)
        return merged, min_norm, ctx


def enumerate_signed_sums(
    config: VectorConfig,
    radius,
    policy: PrecisionPolicy | None = None,
    workers: int = 1,
    cap: int = ENUMERATION_CAP,
) -> EnumerationReport:
    """Count, exactly, the sign assignments whose signed sum lies in the
    closed ball of the given radius.

    Raises TooLarge past the cap, and AmbiguousClassification in interval
    mode when some assignment cannot be classified at the policy tolerance.
    """
    policy = policy or PrecisionPolicy.double()
    if float(radius) < 0:
        raise OutOfRange("radius must be nonnegative")
    merged, min_norm, _ = _walk(config, policy, radius, workers, cap)
    total = 1 << config.n
    return EnumerationReport(
        total=total,
        hits=merged.hits,
        radius=radius,
        probability=Fraction(merged.hits, total),
        min_norm=min_norm,
        argmin=SignAssignment(merged.best_signs),
        margin=0.0 if merged.margin is None else float(merged.margin),
    )


def min_signed_norm(
    config: VectorConfig,
    policy: PrecisionPolicy | None = None,
    workers: int = 1,
    cap: int = ENUMERATION_CAP,
) -> tuple[float, SignAssignment]:
    """Exact minimiser of ||sum eta_i v_i|| over all 2^n assignments.

    Ties break toward the lexicographically smallest sign sequence with +1
    ordered before -1, so results are reproducible across runs and worker
    counts.
    """
    policy = policy or PrecisionPolicy.double()
    merged, min_norm, ctx = _walk(config, policy, None, workers, cap)
    return ctx.to_float(min_norm), SignAssignment(merged.best_signs)
