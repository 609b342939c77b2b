"""Stanley-Reisner rings F[K] and their graded quotients F[K]/(Θ).

A monomial is a weakly increasing tuple of variable labels, so x1^2 x3 is
``(1, 1, 3)``.  Every degree is handled by dense linear algebra on the
monomials whose support is a face; no Gröbner bases are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .complex_core import Complex
from .exact_linalg import QQ, FieldSpec, as_field_array, rank, rref

Monomial = tuple[int, ...]
LinearSystem = Sequence[Sequence[int]]


def support(m: Monomial) -> tuple[int, ...]:
    return tuple(sorted(set(m)))


def graded_basis(K: Complex, r: int) -> list[Monomial]:
    """Degree-r monomials with support in K, in lex order."""
    if r == 0:
        return [()]
    out = []
    for size in range(1, min(r, K.d) + 1):
        for F in K.faces_by_size.get(size, []):
            for extra in combinations_with_replacement(F, r - size):
                out.append(tuple(sorted(F + extra)))
    return sorted(out)


@dataclass
class _Shifts:
    """For multiplication by x_j from degree i to i+1: parallel index arrays."""

    src: list[np.ndarray]
    tgt: list[np.ndarray]


def _multiplication_structure(K: Complex, lower: list[Monomial], upper_index: dict[Monomial, int]) -> _Shifts:
    src = [[] for _ in range(K.n)]
    tgt = [[] for _ in range(K.n)]
    faces = K.face_set
    for s, m in enumerate(lower):
        supp = set(m)
        for j in range(1, K.n + 1):
            if j in supp or tuple(sorted(supp | {j})) in faces:
                src[j - 1].append(s)
                tgt[j - 1].append(upper_index[tuple(sorted(m + (j,)))])
    return _Shifts([np.array(a, dtype=np.intp) for a in src], [np.array(a, dtype=np.intp) for a in tgt])


def multiply_rows(V: np.ndarray, form: np.ndarray, shifts: _Shifts, width: int, field: FieldSpec) -> np.ndarray:
    """Rows of V (vectors in F[K]_i) times a linear form, as vectors in F[K]_{i+1}."""
    out = field.zeros((V.shape[0], width))
    for j in range(len(shifts.src)):
        c = form[j]
        if c == 0 or shifts.src[j].size == 0:
            continue
        out[:, shifts.tgt[j]] = field.normalize(out[:, shifts.tgt[j]] + field.normalize(V[:, shifts.src[j]] * c))
    return out


class FaceRing:
    """Graded pieces F[K]_0..F[K]_top with the x_j multiplication maps."""

    def __init__(self, K: Complex, top: int):
        self.complex = K
        self.top = top
        self.monomials = [graded_basis(K, r) for r in range(top + 1)]
        self.index = [{m: i for i, m in enumerate(ms)} for ms in self.monomials]
        self.shifts = [
            _multiplication_structure(K, self.monomials[r], self.index[r + 1]) for r in range(top)
        ]

    def dim(self, r: int) -> int:
        return len(self.monomials[r])

    def multiply(self, V: np.ndarray, r: int, form, field: FieldSpec) -> np.ndarray:
        return multiply_rows(V, form, self.shifts[r], self.dim(r + 1), field)


@lru_cache(maxsize=64)
def face_ring(K: Complex, top: int) -> FaceRing:
    return FaceRing(K, top)


@dataclass
class GradedQuotient:
    """H(K, Θ) = F[K]/(Θ) in degrees 0..max_degree.

    In each degree the image of (Θ) is kept in reduced echelon form with
    the columns read from the lex-last monomial backwards; the monomials
    that are not pivots form the basis of H_i (the lex-greedy complement of
    the image).
    """

    complex: Complex
    theta: list[list[int]]
    field: FieldSpec
    max_degree: int
    ring: FaceRing
    echelon: list[np.ndarray] = dc_field(default_factory=list)
    pivots: list[np.ndarray] = dc_field(default_factory=list)
    basis_index: list[np.ndarray] = dc_field(default_factory=list)

    @property
    def basis(self) -> list[list[Monomial]]:
        return [[self.ring.monomials[i][k] for k in idx] for i, idx in enumerate(self.basis_index)]

    def dims(self) -> list[int]:
        return [len(idx) for idx in self.basis_index]

    def reduce(self, i: int, V: np.ndarray) -> np.ndarray:
        """Coordinates in the H_i basis of the rows of V (vectors in F[K]_i)."""
        V = as_field_array(V, self.field)
        R = self.echelon[i]
        if R.shape[0]:
            V = self.field.normalize(V - self.field.matmul(V[:, self.pivots[i]], R))
        return V[:, self.basis_index[i]]

    def lift(self, i: int, coords: np.ndarray) -> np.ndarray:
        """Basis coordinates back to vectors in F[K]_i."""
        coords = as_field_array(coords, self.field)
        out = self.field.zeros((coords.shape[0], self.ring.dim(i)))
        out[:, self.basis_index[i]] = coords
        return out

    def multiplication_matrix(self, form, i: int) -> np.ndarray:
        """Matrix (dim H_{i+1} x dim H_i) of m ↦ form·m."""
        if i + 1 > self.max_degree:
            raise ValueError(f"degree {i + 1} exceeds max_degree {self.max_degree}")
        f = self.field.array(list(form)).reshape(-1)
        reps = self.lift(i, self.field.identity(len(self.basis_index[i])))
        return self.reduce(i + 1, self.ring.multiply(reps, i, f, self.field)).T


def quotient(K: Complex, theta: LinearSystem, max_degree: int | None = None, field: FieldSpec = QQ) -> GradedQuotient:
    """Degree-by-degree quotient of F[K] by the ideal of the linear forms."""
    if max_degree is None:
        max_degree = K.d + 1
    theta = [[int(c) for c in form] for form in theta]
    for form in theta:
        if len(form) != K.n:
            raise ValueError(f"linear form of length {len(form)} on {K.n} variables")
    ring = face_ring(K, max_degree)
    forms = [field.array(form).reshape(-1) for form in theta]
    Q = GradedQuotient(K, theta, field, max_degree, ring)
    for i in range(max_degree + 1):
        N = ring.dim(i)
        if i == 0 or not forms:
            image = field.zeros((0, N))
        else:
            eye = field.identity(ring.dim(i - 1))
            image = np.vstack([ring.multiply(eye, i - 1, f, field) for f in forms])
        if image.shape[0]:
            R, piv = rref(image[:, ::-1], field)
            R = R[: len(piv), ::-1]
            piv = np.array([N - 1 - p for p in piv], dtype=np.intp)
        else:
            R, piv = field.zeros((0, N)), np.array([], dtype=np.intp)
        Q.echelon.append(R)
        Q.pivots.append(piv)
        mask = np.ones(N, dtype=bool)
        mask[piv] = False
        Q.basis_index.append(np.flatnonzero(mask))
    return Q


def hilbert_function(Q: GradedQuotient) -> list[int]:
    return Q.dims()


def is_lsop(K: Complex, theta: LinearSystem, field: FieldSpec = QQ) -> bool:
    """Facet-restriction test: on every facet F the forms restrict to a
    space of dimension |F|."""
    if len(theta) != K.d:
        raise ValueError(f"an l.s.o.p. of this complex has {K.d} forms, got {len(theta)}")
    for F in K.facets:
        if not F:
            continue
        sub = [[form[v - 1] for v in F] for form in theta]
        if rank(sub, field) != len(F):
            return False
    return True
