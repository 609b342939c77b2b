"""Exact dense linear algebra over Q and over prime fields.

Matrices are numpy arrays: ``int64`` residues for primes below 2**31 (so a
product of two entries still fits), ``object`` arrays of ``Fraction`` for Q
and for larger primes.  Randomness lives here too: every random draw is a
pure function of a :class:`GenericityPolicy`, a trial index and a label.
"""

from __future__ import annotations

import zlib
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import sympy

_INT64_PRIME_LIMIT = 2**31
# 2^31 - 1; used for the quick modular pass inside rational ranks
_CHECK_PRIME = 2147483647


@dataclass(frozen=True)
class FieldSpec:
    """Q when ``prime`` is None, otherwise GF(prime)."""

    prime: int | None = None

    def __post_init__(self):
        if self.prime is not None and not sympy.isprime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip().lower()
        if text in ("q", "qq", "rationals"):
            return cls()
        if text.startswith("p:"):
            return cls(int(text[2:]))
        raise ValueError(f"unknown field {text!r}; use 'q' or 'p:<prime>'")

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    @property
    def characteristic(self) -> int:
        return 0 if self.prime is None else self.prime

    @property
    def uses_int64(self) -> bool:
        return self.prime is not None and self.prime < _INT64_PRIME_LIMIT

    def __str__(self) -> str:
        return "q" if self.prime is None else f"p:{self.prime}"

    def coerce(self, x):
        if self.prime is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.prime) % self.prime
        return int(x) % self.prime

    def array(self, data) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype.kind in "iu" and self.uses_int64:
            return data.astype(np.int64) % self.prime
        raw = np.array(data, dtype=object)
        if raw.size == 0:
            return self.zeros(raw.shape)
        out = np.vectorize(self.coerce, otypes=[object])(raw)
        return out.astype(np.int64) if self.uses_int64 else out

    def zeros(self, shape) -> np.ndarray:
        if self.uses_int64:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0) if self.prime is None else 0)
        return out

    def identity(self, k: int) -> np.ndarray:
        out = self.zeros((k, k))
        for i in range(k):
            out[i, i] = 1 if self.prime is not None else Fraction(1)
        return out

    def normalize(self, a: np.ndarray) -> np.ndarray:
        return a if self.prime is None else a % self.prime

    def inv(self, x):
        if self.prime is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.prime)

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if A.shape[1] == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        if not self.uses_int64:
            return self.normalize(A.dot(B))
        p = self.prime
        # split B into 16-bit limbs so partial sums stay below 2^63
        lo = B & 0xFFFF
        hi = B >> 16
        step = 1 << 15
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for s in range(0, A.shape[1], step):
            a = A[:, s : s + step]
            part_hi = (a @ hi[s : s + step]) % p
            part_lo = (a @ lo[s : s + step]) % p
            out = (out + (part_hi << 16) % p + part_lo) % p
        return out


QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


# -- elimination -------------------------------------------------------------


def _eliminate(M: np.ndarray, field: FieldSpec, reduced: bool) -> tuple[np.ndarray, list[int]]:
    """Row echelon form (fully reduced if ``reduced``) and pivot columns."""
    R = np.array(M, copy=True)
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c] != 0)
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k], c:] = R[[k, r], c:]
        R[r, c:] = field.normalize(R[r, c:] * field.inv(R[r, c]))
        if reduced:
            targets = np.flatnonzero(R[:, c] != 0)
            targets = targets[targets != r]
        else:
            targets = r + 1 + np.flatnonzero(R[r + 1 :, c] != 0)
        if targets.size:
            R[np.ix_(targets, np.arange(c, cols))] = field.normalize(
                R[targets, c:] - np.outer(R[targets, c], R[r, c:])
            )
        pivots.append(c)
        r += 1
    return R, pivots


def as_field_array(M, field: FieldSpec) -> np.ndarray:
    """2-d array over ``field``; int64 arrays are trusted to hold residues."""
    if isinstance(M, np.ndarray) and M.dtype == np.int64 and field.uses_int64:
        A = M
    else:
        A = field.array(M)
    if A.ndim != 2:
        A = A.reshape(len(A), -1)
    return A


def rref(M, field: FieldSpec = QQ) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    return _eliminate(as_field_array(M, field), field, reduced=True)


def _to_integer_rows(M) -> list[list[int]]:
    rows = []
    for row in M:
        row = [Fraction(x) for x in row]
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    A = np.array([[int(x) for x in row] for row in rows], dtype=object)
    if A.size == 0:
        return 0
    m, n = A.shape
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        nz = [i for i in range(r, m) if A[i, c] != 0]
        if not nz:
            continue
        k = nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        if r + 1 < m and c + 1 < n:
            A[r + 1 :, c + 1 :] = (
                A[r, c] * A[r + 1 :, c + 1 :] - np.outer(A[r + 1 :, c], A[r, c + 1 :])
            ) // prev
        A[r + 1 :, c] = 0
        prev = A[r, c]
        r += 1
    return r


def rank(M, field: FieldSpec = QQ) -> int:
    """Exact rank.  Over Q a modular pass is tried first; if it already
    gives full rank that is a proof, otherwise Bareiss decides."""
    if isinstance(M, np.ndarray) and M.ndim == 2:
        shape = M.shape
    else:
        M = np.array(M, dtype=object)
        if M.ndim != 2:
            M = M.reshape(len(M), -1)
        shape = M.shape
    if 0 in shape:
        return 0
    if field.prime is not None:
        return len(_eliminate(as_field_array(M, field), field, reduced=False)[1])
    ints = _to_integer_rows(M)
    quick = GF(_CHECK_PRIME)
    r = len(_eliminate(quick.array(ints), quick, reduced=False)[1])
    if r == min(shape):
        return r
    return bareiss_rank(ints)


def kernel_basis(M, field: FieldSpec = QQ) -> list[np.ndarray]:
    """Basis of {v : M v = 0}, one vector per free column of the RREF."""
    A = as_field_array(M, field)
    cols = A.shape[1]
    R, pivots = _eliminate(A, field, reduced=True) if A.shape[0] else (A, [])
    basis = []
    pivot_set = set(pivots)
    for f in range(cols):
        if f in pivot_set:
            continue
        v = field.zeros(cols)
        v[f] = 1 if field.prime is not None else Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = field.normalize(-R[i, f]) if field.prime is not None else -R[i, f]
        basis.append(v)
    return basis


def rank_profile(columns: Sequence, field: FieldSpec = QQ) -> list[int]:
    """Indices (0-based) of the greedy left-to-right column basis.

    A column is selected iff it is not in the span of the earlier
    columns; the result is the lex-first basis of the column space.
    """
    columns = list(columns)
    if not columns:
        return []
    A = as_field_array(np.stack([np.asarray(c, dtype=object) for c in columns], axis=1), field)
    return rank_profile_matrix(A, field)


def rank_profile_matrix(A: np.ndarray, field: FieldSpec) -> list[int]:
    if A.shape[0] == 0 or A.shape[1] == 0:
        return []
    return _eliminate(A, field, reduced=False)[1]


# -- genericity --------------------------------------------------------------


@dataclass(frozen=True)
class GenericityPolicy:
    """Seeded randomness standing in for "generic" choices.

    Ranks of generic maps are computed with ``trials`` independent draws of
    integers in [-bound, bound]; the best rank over the trials is kept.
    """

    seed: int = 0
    trials: int = 3
    bound: int = 2**20

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bound < 2**16:
            raise ValueError("coefficient bound must be >= 2^16")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def to_json(self) -> dict:
        return {"seed": self.seed, "trials": self.trials, "bound": self.bound}


def _rng(policy: GenericityPolicy, trial: int, label: str) -> np.random.Generator:
    ss = np.random.SeedSequence([policy.seed, trial, zlib.crc32(label.encode())])
    return np.random.Generator(np.random.PCG64(ss))


def random_vector(policy: GenericityPolicy, trial_index: int, length: int, label: str = "") -> list[int]:
    """Integers uniform in [-B, B]; deterministic in (seed, trial, label)."""
    if length == 0:
        return []
    rng = _rng(policy, trial_index, label)
    return [int(x) for x in rng.integers(-policy.bound, policy.bound + 1, size=length)]


def random_matrix(policy: GenericityPolicy, trial_index: int, rows: int, cols: int, label: str = "") -> list[list[int]]:
    flat = random_vector(policy, trial_index, rows * cols, label)
    return [flat[i * cols : (i + 1) * cols] for i in range(rows)]


def random_prime(policy: GenericityPolicy, trial_index: int, label: str = "prime") -> int:
    """A prime in (2^30, 2^31) for the modular fast path."""
    rng = _rng(policy, trial_index, label)
    start = int(rng.integers(2**30, 2**31 - 2**20))
    return int(sympy.nextprime(start))


def fast_field(field: FieldSpec, policy: GenericityPolicy, trial_index: int) -> FieldSpec:
    """Field the heavy computation runs in: a random large prime standing in
    for Q, or the requested prime field itself."""
    if field.prime is not None:
        return field
    return GF(random_prime(policy, trial_index))


def as_list(v: Iterable) -> list:
    return [int(x) if not isinstance(x, Fraction) else (int(x) if x.denominator == 1 else str(x)) for x in v]
