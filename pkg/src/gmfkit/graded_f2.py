"""Exact graded bookkeeping over F2: truncated Poincare series and mod-2 ranks.

Series coefficients are Python ints (arbitrary precision, never floats).
A series knows the lowest degree it stores (may be negative, e.g. for
spectrum homology) and the truncation degree up to which its coefficients
are valid.  All arithmetic tracks the valid range explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

DEFAULT_TRUNCATION = 32


# ---------------------------------------------------------------------------
# truncated Laurent series with nonnegative integer coefficients


@dataclass(frozen=True)
class PoincareSeries:
    """Coefficients for degrees min_degree..truncation inclusive."""

    min_degree: int
    coeffs: tuple
    truncation: int

    def __post_init__(self):
        if len(self.coeffs) != self.truncation - self.min_degree + 1:
            raise ValueError("coefficient count does not match degree range")
        for c in self.coeffs:
            if not isinstance(c, int) or c < 0:
                raise ValueError("coefficients must be nonnegative integers")
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def coeff(self, n: int) -> int:
        """Coefficient at degree n; zero below min_degree, error above truncation."""
        if n > self.truncation:
            raise ValueError(f"degree {n} beyond truncation {self.truncation}")
        if n < self.min_degree:
            return 0
        return self.coeffs[n - self.min_degree]

    def to_text(self) -> str:
        return " ".join(f"{n}:{self.coeff(n)}" for n in range(self.min_degree, self.truncation + 1))

    def to_json_dict(self) -> dict:
        return {
            "min_degree": self.min_degree,
            "coeffs": list(self.coeffs),
            "truncation": self.truncation,
        }


def series_from_coeffs(coeffs: Sequence[int], min_degree: int = 0) -> PoincareSeries:
    coeffs = [int(c) for c in coeffs]
    return PoincareSeries(min_degree, tuple(coeffs), min_degree + len(coeffs) - 1)


def series_zero(N: int = DEFAULT_TRUNCATION) -> PoincareSeries:
    return series_from_coeffs([0] * (N + 1))


def series_one(N: int = DEFAULT_TRUNCATION) -> PoincareSeries:
    return series_from_coeffs([1] + [0] * N)


def series_add(a: PoincareSeries, b: PoincareSeries) -> PoincareSeries:
    """Disjoint-union rule: plain coefficient sum, degree 0 included."""
    lo = min(a.min_degree, b.min_degree)
    hi = min(a.truncation, b.truncation)
    if hi < lo:
        raise ValueError("empty overlap of valid ranges")
    return series_from_coeffs([a.coeff(n) + b.coeff(n) for n in range(lo, hi + 1)], lo)


def series_mul(a: PoincareSeries, b: PoincareSeries) -> PoincareSeries:
    """Cauchy product (Kunneth rule for a product of spaces).

    The product coefficient at degree n is only fully determined when every
    contributing pair lies in the known ranges, so the result truncates at
    min(Na + mb, Nb + ma).
    """
    lo = a.min_degree + b.min_degree
    hi = min(a.truncation + b.min_degree, b.truncation + a.min_degree)
    if hi < lo:
        raise ValueError("empty overlap of valid ranges")
    out = []
    for n in range(lo, hi + 1):
        s = 0
        for i in range(a.min_degree, a.truncation + 1):
            j = n - i
            if j < b.min_degree:
                break
            if j > b.truncation:
                continue
            s += a.coeffs[i - a.min_degree] * b.coeff(j)
        out.append(s)
    return series_from_coeffs(out, lo)


def series_shift(a: PoincareSeries, k: int) -> PoincareSeries:
    """Multiply by t**k (suspension by k, possibly negative)."""
    return PoincareSeries(a.min_degree + k, a.coeffs, a.truncation + k)


def series_equal(a: PoincareSeries, b: PoincareSeries, up_to: int | None = None):
    """Exact comparison on the common valid range.

    Returns (equal, first_mismatch_degree_or_None).  Coefficients below a
    series' min_degree count as zero; an up_to beyond either truncation is
    refused rather than compared against fabricated zeros.
    """
    hi = min(a.truncation, b.truncation)
    if up_to is not None:
        if up_to > hi:
            raise ValueError(
                f"comparison to degree {up_to} exceeds a truncation ({hi})"
            )
        hi = up_to
    lo = min(a.min_degree, b.min_degree)
    for n in range(lo, hi + 1):
        if a.coeff(n) != b.coeff(n):
            return False, n
    return True, None


# ---------------------------------------------------------------------------
# classifying-space series


def series_BO(m: int, N: int = DEFAULT_TRUNCATION) -> PoincareSeries:
    """prod_{i=1..m} 1/(1-t^i): partition counts with parts <= m.

    Degree-n coefficient = dim_F2 H_n(BO(m)) = number of monomials of
    weighted degree n in generators of degrees 1..m.
    """
    if m < 0:
        raise ValueError("rank must be nonnegative")
    coeffs = [1] + [0] * N
    for part in range(1, m + 1):
        for n in range(part, N + 1):
            coeffs[n] += coeffs[n - part]
    return series_from_coeffs(coeffs)


def series_BSO(m: int, N: int = DEFAULT_TRUNCATION) -> PoincareSeries:
    """prod_{i=2..m} 1/(1-t^i): generators of degrees 2..m (empty for m <= 1)."""
    if m < 0:
        raise ValueError("rank must be nonnegative")
    coeffs = [1] + [0] * N
    for part in range(2, m + 1):
        for n in range(part, N + 1):
            coeffs[n] += coeffs[n - part]
    return series_from_coeffs(coeffs)


@lru_cache(maxsize=None)
def _gauss_poly(m: int, k: int) -> tuple:
    # q-Pascal recurrence [m,k] = [m-1,k-1] + t^k [m-1,k]
    if k < 0 or k > m:
        return (0,)
    if k == 0 or k == m:
        return (1,)
    a = _gauss_poly(m - 1, k - 1)
    b = _gauss_poly(m - 1, k)
    out = [0] * (k * (m - k) + 1)
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i + k] += c
    return tuple(out)


def series_grassmannian(d: int, n: int, N: int = DEFAULT_TRUNCATION) -> PoincareSeries:
    """Gaussian binomial [d+n, d]_t: cells of the Grassmannian of d-planes in R^{d+n}.

    The polynomial has degree d*n; coefficients beyond it are exactly zero,
    so the result is padded with zeros up to N.
    """
    if d < 0 or n < 0:
        raise ValueError("d, n must be nonnegative")
    poly = list(_gauss_poly(d + n, d))
    coeffs = [poly[i] if i < len(poly) else 0 for i in range(N + 1)]
    return series_from_coeffs(coeffs)


# ---------------------------------------------------------------------------
# F2 linear algebra on bit-packed matrices
#
# A matrix is a list of rows; each row is a Python int whose bit k is the
# entry in column k.  Heavy eliminations run on numpy uint64 blocks.


def pack_rows(rows: Sequence[int], ncols: int) -> np.ndarray:
    words = max(1, (ncols + 63) // 64)
    out = np.zeros((len(rows), words), dtype=np.uint64)
    nbytes = words * 8
    for i, r in enumerate(rows):
        out[i] = np.frombuffer(int(r).to_bytes(nbytes, "little"), dtype="<u8")
    return out


def unpack_rows(packed: np.ndarray) -> list:
    return [int.from_bytes(packed[i].tobytes(), "little") for i in range(packed.shape[0])]


def _elim_packed(A: np.ndarray, ncols: int, full: bool):
    """In-place elimination; returns (rank, pivot column list)."""
    nrows = A.shape[0]
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        w, b = divmod(col, 64)
        colbits = (A[row:, w] >> np.uint64(b)) & np.uint64(1)
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        p = row + int(nz[0])
        if p != row:
            A[[row, p]] = A[[p, row]]
        if full:
            bits = (A[:, w] >> np.uint64(b)) & np.uint64(1)
            bits[row] = 0
            sel = np.nonzero(bits)[0]
        else:
            bits = (A[row + 1 :, w] >> np.uint64(b)) & np.uint64(1)
            sel = row + 1 + np.nonzero(bits)[0]
        if sel.size:
            A[sel] ^= A[row]
        pivots.append(col)
        row += 1
    return row, pivots


def _coerce_rows(matrix, ncols: int | None):
    if isinstance(matrix, np.ndarray):
        if matrix.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        rows = []
        for r in matrix:
            acc = 0
            for j, v in enumerate(r):
                if int(v) % 2:
                    acc |= 1 << j
            rows.append(acc)
        return rows, matrix.shape[1]
    rows = list(matrix)
    if rows and not isinstance(rows[0], int):
        ncols2 = len(rows[0])
        ints = []
        for r in rows:
            acc = 0
            for j, v in enumerate(r):
                if int(v) % 2:
                    acc |= 1 << j
            ints.append(acc)
        return ints, ncols2
    if ncols is None:
        ncols = max((r.bit_length() for r in rows), default=0)
    return rows, ncols


def rank_f2(matrix, ncols: int | None = None) -> int:
    """Rank over F2.  Accepts a 0/1 array, list of 0/1 rows, or list of row ints."""
    rows, ncols = _coerce_rows(matrix, ncols)
    if not rows or ncols == 0:
        return 0
    A = pack_rows(rows, ncols)
    rank, _ = _elim_packed(A, ncols, full=False)
    return rank


def rref_f2(matrix, ncols: int | None = None):
    """Reduced row echelon form.  Returns (rank, pivots, rref rows as ints)."""
    rows, ncols = _coerce_rows(matrix, ncols)
    if not rows or ncols == 0:
        return 0, [], []
    A = pack_rows(rows, ncols)
    rank, pivots = _elim_packed(A, ncols, full=True)
    return rank, pivots, unpack_rows(A[:rank])


def transpose_bits(rows: Sequence[int], ncols: int) -> list:
    """Transpose a bit matrix given as row ints; returns column ints."""
    if not rows:
        return [0] * ncols
    if ncols == 0:
        return []
    packed = pack_rows(rows, ncols)
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")[:, :ncols]
    bitsT = np.ascontiguousarray(bits.T)
    packedT = np.packbits(bitsT, axis=1, bitorder="little")
    out = []
    for i in range(ncols):
        out.append(int.from_bytes(packedT[i].tobytes(), "little"))
    return out


# ---------------------------------------------------------------------------
# monomial bases and graded maps


class MonomialBasis:
    """Monomials in weighted generators, listed degree by degree up to N.

    Generators are (label, degree) pairs; a monomial is an exponent tuple
    aligned with the generator list.  Enumeration order is deterministic
    (lexicographic in the exponent tuple, last generator varying fastest).
    """

    def __init__(self, generators: Sequence, N: int):
        self.generators = list(generators)
        self.degrees = [int(d) for (_, d) in self.generators]
        if any(d <= 0 for d in self.degrees):
            raise ValueError("generator degrees must be positive")
        self.N = int(N)
        self._basis = [[] for _ in range(self.N + 1)]
        self._enumerate()
        self._index = [
            {mono: i for i, mono in enumerate(level)} for level in self._basis
        ]

    def _enumerate(self):
        degs = self.degrees
        k = len(degs)
        exps = [0] * k
        basis = self._basis
        N = self.N

        def rec(pos: int, total: int):
            if pos == k:
                basis[total].append(tuple(exps))
                return
            d = degs[pos]
            emax = (N - total) // d
            for e in range(emax + 1):
                exps[pos] = e
                rec(pos + 1, total + e * d)
            exps[pos] = 0

        rec(0, 0)

    def basis(self, n: int):
        if n < 0:
            return []
        if n > self.N:
            raise ValueError(f"degree {n} beyond built truncation {self.N}")
        return self._basis[n]

    def index(self, n: int, mono: tuple) -> int:
        return self._index[n][mono]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def series(self) -> PoincareSeries:
        return series_from_coeffs([len(lvl) for lvl in self._basis])


@dataclass
class GradedMap:
    """Degreewise F2 matrices of a map of graded vector spaces, degrees 0..N.

    rows[n] is a list of row bitmasks (rows = target basis, bit j = source
    basis element j); shape[n] = (target dim, source dim).
    """

    N: int
    rows: list = field(default_factory=list)
    shapes: list = field(default_factory=list)

    def __post_init__(self):
        if len(self.rows) != self.N + 1 or len(self.shapes) != self.N + 1:
            raise ValueError("need one matrix per degree 0..N")
        for n in range(self.N + 1):
            nr, nc = self.shapes[n]
            if len(self.rows[n]) != nr:
                raise ValueError(f"degree {n}: row count {len(self.rows[n])} != {nr}")
            for r in self.rows[n]:
                if r >> nc:
                    raise ValueError(f"degree {n}: row has bits beyond {nc} columns")

    def matrix(self, n: int) -> np.ndarray:
        nr, nc = self.shapes[n]
        out = np.zeros((nr, nc), dtype=np.uint8)
        for i, r in enumerate(self.rows[n]):
            for j in range(nc):
                if (r >> j) & 1:
                    out[i, j] = 1
        return out

    def rank(self, n: int) -> int:
        return rank_f2(self.rows[n], self.shapes[n][1])

    def kernel_dim(self, n: int) -> int:
        return self.shapes[n][1] - self.rank(n)

    def cokernel_dim(self, n: int) -> int:
        return self.shapes[n][0] - self.rank(n)
