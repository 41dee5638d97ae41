"""Exact integer linear algebra for defining matrices.

A bounded monomial polyhedron in C^n is cut out by n Laurent-monomial
inequalities |z^(b^j)| < 1 whose exponents form the rows of an integer
matrix B.  This module owns everything matrix-shaped: determinants and
adjugates in exact arbitrary-precision arithmetic, the normalization that
makes det B > 0 with coprime rows, the sign split B = B_+ - B_-, and the
validation rule (adj B >= 0 elementwise) deciding whether B defines a
bounded domain at all.

Indexing convention: entry(j, k) is row j, column k, zero-based.  Rows of
B carry the monomial exponents; columns enter the numerator bounds.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    AllZeroRowError,
    MatrixTooLargeError,
    SingularMatrixError,
    UnboundedDomainError,
)

DEFAULT_MAX_N = 16


def max_dimension() -> int:
    """Dimension cap; the numerator box enumeration is exponential in n."""
    raw = os.environ.get("BERGPOLY_MAX_N", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_N
    except ValueError:
        return DEFAULT_MAX_N


class IntMatrix:
    """Immutable square matrix of arbitrary-precision integers, n >= 2."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        tup = tuple(tuple(int(x) for x in r) for r in rows)
        n = len(tup)
        if n < 2:
            raise ValueError("matrix must be at least 2x2")
        if n > max_dimension():
            raise MatrixTooLargeError(
                f"n={n} exceeds the cap {max_dimension()} (set BERGPOLY_MAX_N to raise it)"
            )
        if any(len(r) != n for r in tup):
            raise ValueError("matrix must be square")
        object.__setattr__(self, "rows", tup)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @property
    def n(self) -> int:
        return len(self.rows)

    def entry(self, j: int, k: int) -> int:
        return self.rows[j][k]

    def row(self, j: int) -> tuple[int, ...]:
        return self.rows[j]

    def col(self, k: int) -> tuple[int, ...]:
        return tuple(r[k] for r in self.rows)

    def column_abs_sums(self) -> tuple[int, ...]:
        """(1|B|)_k for each column k, with |B| the entrywise absolute value."""
        return tuple(sum(abs(r[k]) for r in self.rows) for k in range(self.n))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.rows))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        cols = other.transpose().rows
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows)
        )

    def scaled(self, factor: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(factor * x for x in r) for r in self.rows))

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({list(map(list, self.rows))})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    All intermediate quantities are integers (each division is exact),
    which keeps growth polynomial and avoids rationals entirely.
    """
    n = m.n
    a = [list(r) for r in m.rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _minor_det(m: IntMatrix, drop_row: int, drop_col: int) -> int:
    sub = [
        [m.rows[r][c] for c in range(m.n) if c != drop_col]
        for r in range(m.n)
        if r != drop_row
    ]
    if len(sub) == 1:
        return sub[0][0]
    return determinant(IntMatrix(sub))


def adjugate(m: IntMatrix) -> IntMatrix:
    """Transposed cofactor matrix: adj(M)[j][k] = (-1)^(j+k) det(M minus row k, col j).

    Satisfies M @ adj(M) = det(M) * I exactly, for singular M included.
    """
    n = m.n
    if n == 2:
        (a, b), (c, d) = m.rows
        return IntMatrix(((d, -b), (-c, a)))
    return IntMatrix(
        tuple(
            tuple((-1) ** (j + k) * _minor_det(m, k, j) for k in range(n))
            for j in range(n)
        )
    )


def row_gcd(v: Sequence[int]) -> int:
    """gcd of absolute values; rejects the all-zero vector."""
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise AllZeroRowError("gcd of an all-zero row is undefined")
    return g


@dataclass(frozen=True)
class SignSplit:
    """Elementwise split M = plus - minus with disjoint supports, both >= 0."""

    plus: IntMatrix
    minus: IntMatrix


def sign_split(m: IntMatrix) -> SignSplit:
    plus = IntMatrix(tuple(tuple(max(x, 0) for x in r) for r in m.rows))
    minus = IntMatrix(tuple(tuple(max(-x, 0) for x in r) for r in m.rows))
    return SignSplit(plus, minus)


@dataclass(frozen=True)
class NormalizedMatrix:
    """Defining matrix after normalization: det > 0 and every row gcd 1."""

    matrix: IntMatrix
    det: int

    @property
    def n(self) -> int:
        return self.matrix.n


def normalize(m: IntMatrix) -> NormalizedMatrix:
    """Divide each row by its gcd, then fix the determinant sign.

    Both steps leave the domain unchanged: scaling a row rescales one
    monomial inequality by a positive power, and permuting rows permutes
    the inequalities.  A single transposition of the last two rows flips
    a negative determinant; the choice is fixed for determinism.
    Idempotent.  Raises SingularMatrixError when det = 0 (the sublevel
    sets then fail to cut out an open set).
    """
    if any(all(x == 0 for x in r) for r in m.rows):
        raise SingularMatrixError("zero row: matrix is singular")
    rows = [tuple(x // row_gcd(r) for x in r) for r in m.rows]
    reduced = IntMatrix(rows)
    det = determinant(reduced)
    if det == 0:
        raise SingularMatrixError("det B = 0: the domain would not be open")
    if det < 0:
        rows[-2], rows[-1] = rows[-1], rows[-2]
        reduced = IntMatrix(rows)
        det = -det
    return NormalizedMatrix(reduced, det)


@dataclass(frozen=True)
class Validation:
    """Outcome of the boundedness test, carrying adj B for reuse."""

    accepted: bool
    adjugate: IntMatrix
    negative_entry: tuple[int, int] | None


@dataclass(frozen=True)
class ValidatedMatrix:
    """Normalized defining matrix that passed validation, with its adjugate."""

    matrix: IntMatrix
    det: int
    adj: IntMatrix

    @property
    def n(self) -> int:
        return self.matrix.n


def validate_defining(nm: NormalizedMatrix) -> Validation:
    """Accept iff every entry of adj B is >= 0 (equivalently det*B^-1 >= 0).

    Nonnegativity of B^-1 characterizes defining matrices of bounded
    monomial polyhedra; a negative adjugate entry means some coordinate
    escapes to infinity inside the sublevel sets.
    """
    adj = adjugate(nm.matrix)
    for j in range(nm.n):
        for k in range(nm.n):
            if adj.entry(j, k) < 0:
                return Validation(False, adj, (j, k))
    return Validation(True, adj, None)


def prepare(m: IntMatrix | NormalizedMatrix) -> ValidatedMatrix:
    """normalize + validate, raising on failure; the standard entry point."""
    nm = m if isinstance(m, NormalizedMatrix) else normalize(m)
    verdict = validate_defining(nm)
    if not verdict.accepted:
        j, k = verdict.negative_entry  # type: ignore[misc]
        raise UnboundedDomainError(
            f"adjugate entry ({j},{k}) is negative: the domain is unbounded"
        )
    return ValidatedMatrix(nm.matrix, nm.det, verdict.adjugate)


def parse_matrix(text: str) -> IntMatrix:
    """Parse a matrix from inline, line-based, or JSON form.

    Inline: rows separated by "/", entries by whitespace ("1 -1 / 0 1").
    File-style: one row per line.  JSON: array of arrays.  All three are
    accepted everywhere a matrix is an input.
    """
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty matrix")
    if stripped.startswith("["):
        data = json.loads(stripped)
        return IntMatrix(data)
    if "/" in stripped:
        row_texts = stripped.split("/")
    else:
        row_texts = stripped.splitlines()
    rows = []
    for rt in row_texts:
        parts = rt.split()
        if not parts:
            raise ValueError("empty row in matrix text")
        rows.append([int(p) for p in parts])
    return IntMatrix(rows)


def matrix_to_json(m: IntMatrix) -> list[list[int]]:
    return [list(r) for r in m.rows]
