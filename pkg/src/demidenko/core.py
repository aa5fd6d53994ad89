"""Exact symmetric matrices, permutations and the plain-text matrix format.

Entries are stored as integers.  Decimal input is scaled by the smallest
power of ten that clears every fractional part; the factor is kept on the
matrix so that serialization reproduces the original values.  All conditions
handled by this package are linear inequalities with unit coefficients, so a
positive common scale never changes a verdict.

Indices are 1-based in permutations, witnesses and text; the backing numpy
array is 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Optional, Sequence

import numpy as np

MAX_FRACTION_DIGITS = 12

# int64 is used while every intermediate stays far below 2**63; larger
# inputs fall back to object arrays of Python ints.
_INT64_HEADROOM = 2**58


class MatrixFormatError(ValueError):
    """Raised for malformed or asymmetric matrix input."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


def _exact_array(values, n: int) -> np.ndarray:
    obj = np.empty((n, n), dtype=object)
    for i, row in enumerate(values):
        for j, v in enumerate(row):
            obj[i, j] = _as_int(v)
    biggest = max((abs(x) for x in obj.flat), default=0)
    if biggest * 16 * n * n < _INT64_HEADROOM:
        return obj.astype(np.int64)
    return obj


def _as_int(v) -> int:
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)) and float(v).is_integer():
        return int(v)
    if isinstance(v, Decimal) and v == v.to_integral_value():
        return int(v)
    raise TypeError(f"entry {v!r} is not an exact integer; use parse_matrix for decimal input")


class SymmetricMatrix:
    """Immutable exact symmetric matrix.

    ``values`` is a read-only numpy array (int64, or object dtype holding
    Python ints when magnitudes are too large for safe int64 arithmetic).
    ``scale`` is the power of ten the stored integers were multiplied by.
    """

    __slots__ = ("_a", "scale")

    def __init__(self, values, scale: int = 1, *, check: bool = True):
        if isinstance(values, SymmetricMatrix):
            values, scale = values._a, values.scale
        rows = values.tolist() if isinstance(values, np.ndarray) else [list(r) for r in values]
        n = len(rows)
        if n < 1:
            raise ValueError("matrix order must be at least 1")
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        a = _exact_array(rows, n)
        if check:
            bad = _first_asymmetry(a)
            if bad is not None:
                i, j = bad
                raise ValueError(f"asymmetric at ({i + 1},{j + 1})/({j + 1},{i + 1})")
        a.setflags(write=False)
        self._a = a
        self.scale = int(scale)

    @classmethod
    def _wrap(cls, a: np.ndarray, scale: int = 1) -> "SymmetricMatrix":
        # trusted internal constructor: a is already exact and symmetric
        obj = cls.__new__(cls)
        a = np.array(a, copy=True)
        if a.dtype != object and a.dtype != np.int64:
            a = a.astype(np.int64)
        a.setflags(write=False)
        obj._a = a
        obj.scale = scale
        return obj

    @property
    def n(self) -> int:
        return self._a.shape[0]

    @property
    def values(self) -> np.ndarray:
        return self._a

    def entry(self, i: int, j: int):
        """Entry at 1-based position (i, j)."""
        return self._a[i - 1, j - 1]

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def submatrix(self, indices: Sequence[int]) -> "SymmetricMatrix":
        """Principal submatrix on the given 0-based indices, in that order."""
        idx = np.asarray(indices, dtype=np.intp)
        return SymmetricMatrix._wrap(self._a[np.ix_(idx, idx)], self.scale)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricMatrix):
            return NotImplemented
        return self.n == other.n and self.scale == other.scale and bool(np.all(self._a == other._a))

    def __hash__(self) -> int:
        return hash((self.n, self.scale, tuple(int(x) for x in self._a.flat)))

    def __repr__(self) -> str:
        return f"SymmetricMatrix({self.tolist()!r}" + (f", scale={self.scale})" if self.scale != 1 else ")")


def _first_asymmetry(a: np.ndarray):
    diff = np.argwhere(a != a.T)
    if len(diff) == 0:
        return None
    i, j = (int(x) for x in diff[0])
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Permutation:
    """Bijection on {1..n} written as its image sequence <x_1, ..., x_n>."""

    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if len(imgs) < 1 or sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {imgs}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_zero_based(cls, seq: Iterable[int]) -> "Permutation":
        return cls(tuple(int(x) + 1 for x in seq))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def zero_based(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.intp) - 1

    def __str__(self) -> str:
        return format_permutation(self)


def _same_size(a: int, b: int, what: str) -> None:
    if a != b:
        raise ValueError(f"size mismatch in {what}: {a} != {b}")


def apply(C: SymmetricMatrix, phi: Permutation) -> SymmetricMatrix:
    """The permuted matrix with entries ``C[phi(i)][phi(j)]``."""
    _same_size(C.n, phi.n, "apply")
    idx = phi.zero_based()
    return SymmetricMatrix._wrap(C.values[np.ix_(idx, idx)], C.scale)


def compose(phi: Permutation, pi: Permutation) -> Permutation:
    """``(phi o pi)(i) = phi(pi(i))``."""
    _same_size(phi.n, pi.n, "compose")
    return Permutation(tuple(phi.images[x - 1] for x in pi.images))


def reverse(pi: Permutation) -> Permutation:
    return Permutation(pi.images[::-1])


def inverse(pi: Permutation) -> Permutation:
    inv = [0] * pi.n
    for pos, x in enumerate(pi.images, start=1):
        inv[x - 1] = pos
    return Permutation(tuple(inv))


def canonical(pi: Permutation) -> Permutation:
    """The lexicographically smaller of ``pi`` and its reverse."""
    rev = pi.images[::-1]
    return pi if pi.images <= rev else Permutation(rev)


class _Unset:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNSET"

    def __bool__(self) -> bool:
        return False


UNSET = _Unset()


@dataclass
class PartialPermutation:
    """Permutation under construction: a fixed prefix of length ``r`` plus a
    fixed last slot, every other slot UNSET.  Values are 1-based indices."""

    n: int
    images: list = field(default_factory=list)
    r: int = 0

    @classmethod
    def anchored(cls, n: int, first: int, last: int) -> "PartialPermutation":
        if n < 2 or first == last:
            raise ValueError("anchors must be two distinct indices of a matrix with n >= 2")
        images = [UNSET] * n
        images[0] = first
        images[-1] = last
        return cls(n, images, 1)

    @property
    def last_fixed(self) -> bool:
        return self.images[-1] is not UNSET

    @property
    def first(self):
        return self.images[0]

    @property
    def last(self):
        return self.images[-1]

    def prefix(self) -> list[int]:
        return self.images[: self.r]

    def extend(self, values: Sequence[int]) -> None:
        """Fix the next ``len(values)`` slots after the prefix."""
        if self.r + len(values) > self.n - 1:
            raise IndexError("prefix would overrun the fixed last slot")
        used = {x for x in self.images if x is not UNSET}
        for v in values:
            if v in used:
                raise ValueError(f"index {v} already placed")
            used.add(v)
            self.images[self.r] = v
            self.r += 1

    def is_complete(self) -> bool:
        return self.r == self.n - 1 and self.last_fixed

    def to_permutation(self) -> Permutation:
        if not self.is_complete():
            raise ValueError("partial permutation still has unset slots")
        return Permutation(tuple(self.images))

    def copy(self) -> "PartialPermutation":
        return PartialPermutation(self.n, list(self.images), self.r)


@dataclass(frozen=True)
class Verdict:
    """Outcome of a condition check.

    ``witness`` holds 1-based indices in the matrix's current order: a
    quadruple (i, j, k, l) for the Demidenko conditions, a triple (i, j, k)
    for the Anti-Robinson conditions.
    """

    holds: bool
    witness: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        if self.holds != (self.witness is None):
            raise ValueError("a verdict carries a witness exactly when it fails")

    def __bool__(self) -> bool:
        return self.holds


# ---------------------------------------------------------------- text I/O

def _parse_number(tok: str, line: int, col: int) -> Decimal:
    try:
        d = Decimal(tok)
    except InvalidOperation:
        raise MatrixFormatError(f"non-numeric token {tok!r}", line, col) from None
    if not d.is_finite():
        raise MatrixFormatError(f"non-finite value {tok!r}", line, col)
    return d


def _fraction_digits(d: Decimal) -> int:
    if d == 0:
        return 0
    return max(0, -d.normalize().as_tuple().exponent)


def parse_matrix(text: str) -> SymmetricMatrix:
    """Parse the text format: first data line is n, then n rows of n numbers.

    Lines whose first non-blank character is ``#`` and blank lines are
    skipped.  Errors name the 1-based line and column (token number).
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        rows.append((lineno, s.split()))
    if not rows:
        raise MatrixFormatError("empty input: expected the order n")

    head_line, head = rows[0]
    if len(head) != 1:
        raise MatrixFormatError("first line must hold only the order n", head_line, 2)
    try:
        n = int(head[0])
    except ValueError:
        raise MatrixFormatError(f"order {head[0]!r} is not an integer", head_line, 1) from None
    if n < 1:
        raise MatrixFormatError(f"order must be positive, got {n}", head_line, 1)

    body = rows[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] if body else head_line)
        raise MatrixFormatError(f"expected {n} matrix rows, found {len(body)}", where)

    dec = []
    digits = 0
    for lineno, toks in body:
        if len(toks) != n:
            raise MatrixFormatError(f"expected {n} entries, found {len(toks)}", lineno)
        row = [_parse_number(t, lineno, c) for c, t in enumerate(toks, start=1)]
        digits = max(digits, *(_fraction_digits(d) for d in row))
        dec.append(row)
    if digits > MAX_FRACTION_DIGITS:
        raise MatrixFormatError(f"more than {MAX_FRACTION_DIGITS} fractional digits")

    scale = 10**digits
    ints = [[int(d * scale) for d in row] for row in dec]
    for i in range(n):
        for j in range(i + 1, n):
            if ints[i][j] != ints[j][i]:
                raise MatrixFormatError(
                    f"asymmetric at ({i + 1},{j + 1})/({j + 1},{i + 1})", body[j][0], i + 1
                )
    return SymmetricMatrix(ints, scale, check=False)


def format_value(v: int, scale: int) -> str:
    if scale == 1:
        return str(int(v))
    digits = len(str(scale)) - 1
    return format(Decimal(int(v)).scaleb(-digits).normalize(), "f")


def serialize_matrix(C: SymmetricMatrix) -> str:
    lines = [str(C.n)]
    for row in C.values:
        lines.append(" ".join(format_value(v, C.scale) for v in row))
    return "\n".join(lines) + "\n"


def read_matrix(path) -> SymmetricMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(C: SymmetricMatrix, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(C))


def format_permutation(pi: Permutation) -> str:
    return " ".join(str(x) for x in pi.images)


def parse_permutation(text: str) -> Permutation:
    return Permutation(tuple(int(t) for t in text.split()))
