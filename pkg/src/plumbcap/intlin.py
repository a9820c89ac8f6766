"""Exact integer linear algebra for symmetric lattices.

Everything here works over Python's arbitrary-precision integers; there is
no floating point anywhere.  Definiteness is decided by the signs of the
leading principal minors, computed with fraction-free (Bareiss) elimination,
so the answers are exact no matter how large the determinants grow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass


class NotDefiniteError(ValueError):
    """An operation that needs a negative definite form was given one that
    is not."""


class NonUniqueSpinError(ValueError):
    """mu_bar needs a unique 0/1 characteristic (Wu) vector, which exists
    exactly when the determinant is odd."""


@dataclass(frozen=True)
class GramMatrix:
    """A labeled symmetric integer matrix.

    ``entries`` is a tuple of row tuples.  Rank 0 (the empty matrix) is
    allowed: it shows up as the intersection form of a trivial cap and all
    operations treat it by the usual empty conventions (determinant 1,
    negative definite, embeds anywhere).
    """

    rank: int
    labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if len(self.labels) != self.rank or len(self.entries) != self.rank:
            raise ValueError("labels/entries do not match rank")
        if len(set(self.labels)) != self.rank:
            raise ValueError("labels must be unique")
        for row in self.entries:
            if len(row) != self.rank:
                raise ValueError("entries must be square")
        for i in range(self.rank):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError(
                        "matrix is not symmetric at (%d, %d)" % (i, j))

    @classmethod
    def from_rows(cls, rows, labels=None) -> "GramMatrix":
        entries = tuple(tuple(int(x) for x in row) for row in rows)
        if labels is None:
            labels = tuple(str(i) for i in range(len(entries)))
        return cls(rank=len(entries), labels=tuple(labels), entries=entries)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(self.rank))

    def to_json_dict(self) -> dict:
        return {
            "rank": self.rank,
            "labels": list(self.labels),
            "gram": [list(row) for row in self.entries],
        }


def gram_to_json(q: GramMatrix) -> str:
    return json.dumps(q.to_json_dict(), indent=2, sort_keys=True) + "\n"


def gram_from_json(text: str) -> GramMatrix:
    """Load a GramMatrix from its JSON document; symmetry is required."""
    doc = json.loads(text)
    try:
        rank = doc["rank"]
        labels = doc["labels"]
        gram = doc["gram"]
    except (TypeError, KeyError) as exc:
        raise ValueError("gram JSON needs keys rank/labels/gram") from exc
    q = GramMatrix.from_rows(gram, labels=[str(l) for l in labels])
    if q.rank != rank:
        raise ValueError("declared rank %r does not match matrix" % (rank,))
    return q


def determinant(q: GramMatrix) -> int:
    """Exact determinant by fraction-free elimination with row pivoting."""
    n = q.rank
    if n == 0:
        return 1
    rows = [list(r) for r in q.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # Exact division: Bareiss guarantees prev divides this.
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
        prev = pivot
    return sign * rows[n - 1][n - 1]


def first_sylvester_violation(q: GramMatrix) -> int | None:
    """The smallest k (1-based) whose leading k x k minor breaks the
    alternating-sign test for negative definiteness, or None.

    A zero minor counts as a violation (definite forms have none).  During
    Bareiss elimination without pivoting the diagonal entry at position k
    is exactly the leading principal minor of order k+1, which is what
    makes the single pass below correct.
    """
    n = q.rank
    rows = [list(r) for r in q.entries]
    prev = 1
    for k in range(n):
        minor = rows[k][k]
        want_negative = (k % 2 == 0)
        if minor == 0 or (minor < 0) != want_negative:
            return k + 1
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * minor - rows[i][k] * rows[k][j]) // prev
        prev = minor
    return None


def is_negative_definite(q: GramMatrix) -> bool:
    """True iff (-1)^k det(leading k x k minor) > 0 for k = 1..rank."""
    return first_sylvester_violation(q) is None


@dataclass(frozen=True)
class WuClass:
    """A 0/1 characteristic vector: Q w = diag(Q) mod 2, coordinatewise."""

    coefficients: tuple[int, ...]

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.coefficients) if c)

    def support_labels(self, q: GramMatrix) -> tuple[str, ...]:
        return tuple(q.labels[i] for i in self.support())


def _satisfies_wu(q: GramMatrix, bits) -> bool:
    for i in range(q.rank):
        acc = 0
        for k in range(q.rank):
            acc ^= (q.entries[i][k] & 1) & bits[k]
        if acc != (q.entries[i][i] & 1):
            return False
    return True


def wu_classes(q: GramMatrix) -> list[WuClass]:
    """All 0/1 solutions of Q w = diag(Q) over GF(2), sorted as bit tuples.

    The system is always solvable for a symmetric matrix, and the solution
    count is 2^(nullity of Q mod 2); it is a singleton exactly when det(Q)
    is odd.
    """
    n = q.rank
    # Row-reduce [mask | rhs] with rows as bitmasks.
    reduced: list[tuple[int, int, int]] = []  # (pivot column, mask, rhs)
    for i in range(n):
        mask = 0
        for k in range(n):
            if q.entries[i][k] & 1:
                mask |= 1 << k
        rhs = q.entries[i][i] & 1
        for pcol, pmask, prhs in reduced:
            if (mask >> pcol) & 1:
                mask ^= pmask
                rhs ^= prhs
        if mask:
            pivot = (mask & -mask).bit_length() - 1
            reduced.append((pivot, mask, rhs))
        elif rhs:
            # diag(Q) always lies in the GF(2) column space of symmetric Q
            raise AssertionError("inconsistent characteristic-vector system")
    reduced.sort()
    pivot_cols = [pcol for pcol, _, _ in reduced]
    free_cols = [k for k in range(n) if k not in pivot_cols]

    solutions = []
    for assignment in range(1 << len(free_cols)):
        bits = [0] * n
        for idx, col in enumerate(free_cols):
            bits[col] = (assignment >> idx) & 1
        # Back-substitute, highest pivot first.
        for pcol, pmask, prhs in reversed(reduced):
            acc = prhs
            rest = pmask & ~(1 << pcol)
            while rest:
                col = (rest & -rest).bit_length() - 1
                acc ^= bits[col]
                rest &= rest - 1
            bits[pcol] = acc
        assert _satisfies_wu(q, bits)
        solutions.append(tuple(bits))
    solutions.sort()
    return [WuClass(coefficients=s) for s in solutions]


def mu_bar(q: GramMatrix) -> int:
    """Signature minus w^T Q w for the unique 0/1 Wu class w.

    For a negative definite form the signature is -rank.  Raises
    NotDefiniteError unless Q is negative definite, and NonUniqueSpinError
    when det(Q) is even (two or more Wu classes, no canonical choice).
    """
    if not is_negative_definite(q):
        raise NotDefiniteError("mu_bar needs a negative definite form")
    classes = wu_classes(q)
    if len(classes) != 1:
        raise NonUniqueSpinError(
            "mu_bar needs odd determinant; found %d Wu classes" % len(classes))
    w = classes[0].coefficients
    wqw = 0
    for i in range(q.rank):
        if not w[i]:
            continue
        for j in range(q.rank):
            if w[j]:
                wqw += q.entries[i][j]
    return -q.rank - wqw
