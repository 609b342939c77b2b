"""Reduced simplicial homology over Q and the homology-sphere test."""

from __future__ import annotations

import numpy as np

from .complex_core import Complex, Face, faces, link
from .exact_linalg import QQ, rank


def boundary_matrix(K: Complex, k: int) -> np.ndarray:
    """Matrix of ∂_k from k-faces to (k-1)-faces (augmented: ∂_0 hits ∅).

    Removing the vertex in sorted position i carries the sign (-1)^i.
    """
    rows = faces(K, k - 1)
    cols = faces(K, k)
    index = {f: i for i, f in enumerate(rows)}
    M = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, F in enumerate(cols):
        for i in range(len(F)):
            M[index[F[:i] + F[i + 1 :]], j] = (-1) ** i
    return M


def reduced_betti(K: Complex) -> tuple[int, ...]:
    """(b̃_{-1}, b̃_0, ..., b̃_dim) over Q."""
    top = K.dim
    ranks = {k: rank(boundary_matrix(K, k), QQ) for k in range(0, top + 2)}
    ranks[-1] = 0
    return tuple(len(faces(K, k)) - ranks[k] - ranks[k + 1] for k in range(-1, top + 1))


def is_homology_sphere(K: Complex) -> tuple[bool, Face | None]:
    """Q-homology sphere test over every face link, ∅ included.

    Returns the verdict and the first face whose link fails (None on
    success).  Impure complexes fail at ∅.
    """
    if not K.is_pure():
        return False, ()
    for size in sorted(K.faces_by_size):
        for F in K.faces_by_size[size]:
            L = link(K, F)
            b = reduced_betti(L)
            expected = (0,) * (len(b) - 1) + (1,)
            if b != expected:
                return False, F
    return True, None
