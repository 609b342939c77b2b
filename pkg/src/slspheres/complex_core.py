"""Finite simplicial complexes on the vertex labels 1..n.

A complex is stored by its facets; faces of every size are enumerated on
demand and memoized.  Faces are strictly increasing tuples of labels.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Sequence

Face = tuple[int, ...]


class ComplexError(ValueError):
    pass


class NotAFaceError(ComplexError):
    pass


class NotSymmetricError(ValueError):
    pass


def _as_face(face: Iterable[int]) -> Face:
    out = tuple(sorted(int(v) for v in face))
    if len(set(out)) != len(out):
        raise ComplexError(f"repeated vertex in face {out}")
    return out


@dataclass(frozen=True)
class Complex:
    """Simplicial complex given by a vertex count and an antichain of facets.

    The void sphere {∅} is ``Complex(n, [()])``; an empty facet list is
    read the same way.
    """

    n: int
    facets: tuple[Face, ...]

    def __init__(self, n: int, facets: Iterable[Iterable[int]]):
        fs = sorted({_as_face(f) for f in facets})
        if not fs:
            fs = [()]
        if () in fs and len(fs) > 1:
            raise ComplexError("the empty face cannot be a facet next to others")
        for f in fs:
            if f and (f[0] < 1 or f[-1] > n):
                raise ComplexError(f"face {f} has labels outside [1, {n}]")
        sets = [frozenset(f) for f in fs]
        for i, a in enumerate(sets):
            for j, b in enumerate(sets):
                if i != j and a < b:
                    raise ComplexError(f"facet {fs[i]} is contained in facet {fs[j]}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "facets", tuple(fs))

    @classmethod
    def from_faces(cls, n: int, faces: Iterable[Iterable[int]]) -> "Complex":
        """Complex generated by ``faces`` (keeps only the maximal ones)."""
        fs = {_as_face(f) for f in faces}
        maximal = []
        for f in sorted(fs, key=len, reverse=True):
            s = frozenset(f)
            if not any(s <= m for m in maximal):
                maximal.append(s)
        return cls(n, [tuple(sorted(m)) for m in maximal])

    @cached_property
    def faces_by_size(self) -> dict[int, list[Face]]:
        by_size: dict[int, set[Face]] = {}
        for f in self.facets:
            for k in range(len(f) + 1):
                by_size.setdefault(k, set()).update(combinations(f, k))
        return {k: sorted(v) for k, v in sorted(by_size.items())}

    @cached_property
    def face_set(self) -> frozenset[Face]:
        return frozenset(f for fs in self.faces_by_size.values() for f in fs)

    @cached_property
    def face_index(self) -> dict[int, dict[Face, int]]:
        return {k: {f: i for i, f in enumerate(fs)} for k, fs in self.faces_by_size.items()}

    def __contains__(self, face: Iterable[int]) -> bool:
        return _as_face(face) in self.face_set

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    @property
    def d(self) -> int:
        """Number of vertices of a top face (dim + 1)."""
        return self.dim + 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for (v,) in self.faces_by_size.get(1, []))

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def relabel(self, mapping: dict[int, int], n: int | None = None) -> "Complex":
        new_n = self.n if n is None else n
        return Complex.from_faces(new_n, (tuple(mapping[v] for v in f) for f in self.facets))

    def compact(self) -> tuple["Complex", dict[int, int]]:
        """Relabel the used vertices to 1..m in increasing order."""
        mapping = {v: i + 1 for i, v in enumerate(self.vertices)}
        return self.relabel(mapping, len(mapping)), mapping

    def intersection(self, other: "Complex") -> "Complex":
        return Complex.from_faces(max(self.n, other.n), self.face_set & other.face_set)

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "Complex":
        if not isinstance(data, dict) or "n" not in data or "facets" not in data:
            raise ComplexError('expected an object with keys "n" and "facets"')
        return cls(int(data["n"]), data["facets"])

    def __repr__(self) -> str:
        return f"Complex(n={self.n}, facets={[list(f) for f in self.facets]})"


def load_complex(path: str | Path) -> Complex:
    return Complex.from_json(json.loads(Path(path).read_text()))


def dump_complex(K: Complex, path: str | Path) -> None:
    Path(path).write_text(json.dumps(K.to_json()) + "\n")


def faces(K: Complex, k: int) -> list[Face]:
    """The k-dimensional faces (k+1 vertices); k = -1 gives [()]."""
    return list(K.faces_by_size.get(k + 1, []))


def f_vector(K: Complex) -> tuple[int, ...]:
    """(f_{-1}, f_0, ..., f_{d-1})."""
    return tuple(len(K.faces_by_size.get(i, [])) for i in range(K.d + 1))


def h_vector(K: Complex) -> tuple[int, ...]:
    d = K.d
    f = f_vector(K)
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def is_symmetric(h: Sequence[int]) -> bool:
    return tuple(h) == tuple(reversed(h))


def g_vector(K: Complex) -> tuple[int, ...]:
    h = h_vector(K)
    if not is_symmetric(h):
        raise NotSymmetricError(f"h not symmetric: {h}")
    return (h[0],) + tuple(h[i] - h[i - 1] for i in range(1, K.d // 2 + 1))


def link(K: Complex, F: Iterable[int]) -> Complex:
    """lk(F, K) = {T in K : T ∩ F = ∅, T ∪ F in K}, on the original labels."""
    F = _as_face(F)
    if F not in K.face_set:
        raise NotAFaceError(f"{F} is not a face")
    s = set(F)
    return Complex(K.n, {tuple(v for v in G if v not in s) for G in K.facets if s <= set(G)})


def star(K: Complex, F: Iterable[int]) -> Complex:
    """Closed star: the subcomplex generated by the facets containing F."""
    F = _as_face(F)
    if F not in K.face_set:
        raise NotAFaceError(f"{F} is not a face")
    s = set(F)
    return Complex(K.n, [G for G in K.facets if s <= set(G)])


def open_star(K: Complex, F: Iterable[int]) -> list[Face]:
    """st(F, K) = {S in K : F ⊆ S} as a face list (not a subcomplex)."""
    F = _as_face(F)
    if F not in K.face_set:
        raise NotAFaceError(f"{F} is not a face")
    s = set(F)
    return sorted((G for G in K.face_set if s <= set(G)), key=lambda G: (len(G), G))


def is_shifted(K: Complex) -> bool:
    fs = K.face_set
    for S in fs:
        members = set(S)
        for j in S:
            for i in range(1, j):
                if i not in members:
                    T = tuple(sorted((members - {j}) | {i}))
                    if T not in fs:
                        return False
    return True


# -- named families ---------------------------------------------------------


def simplex(vertices: Iterable[int], n: int | None = None) -> Complex:
    """The closed simplex on ``vertices``."""
    F = _as_face(vertices)
    return Complex(max(F, default=0) if n is None else n, [F])


def simplex_boundary(d: int) -> Complex:
    """∂σ^d: all d-subsets of [d+1], a (d-1)-sphere."""
    if d < 0:
        raise ComplexError("d must be >= 0")
    return Complex(d + 1, combinations(range(1, d + 2), d))


def cross_polytope_boundary(d: int) -> Complex:
    """Boundary of the d-dimensional cross-polytope; antipodes are 2i-1, 2i."""
    if d < 1:
        raise ComplexError("d must be >= 1")
    facets = [[]]
    for i in range(1, d + 1):
        facets = [f + [v] for f in facets for v in (2 * i - 1, 2 * i)]
    return Complex(2 * d, facets)


def octahedron() -> Complex:
    return cross_polytope_boundary(3)


def _gale_even(S: Sequence[int], n: int) -> bool:
    members = set(S)
    outside = [v for v in range(1, n + 1) if v not in members]
    for a, b in zip(outside, outside[1:]):
        if (b - a - 1) % 2:
            return False
    return True


def cyclic_polytope_boundary(d: int, n: int) -> Complex:
    """Boundary of the cyclic d-polytope on n vertices (Gale evenness)."""
    if d < 1 or n < d + 1:
        raise ComplexError(f"need d >= 1 and n >= d+1, got d={d}, n={n}")
    return Complex(n, [S for S in combinations(range(1, n + 1), d) if _gale_even(S, n)])


def _contains_interval(S: set[int], a: int, b: int) -> bool:
    # [a, b] with a > b is empty
    return all(x in S for x in range(a, b + 1))


def delta_dn(d: int, n: int) -> Complex:
    """The extremal shifted complex Δ(d, n) built by filtering all d-subsets."""
    if d < 1 or n < d + 1:
        raise ComplexError(f"need d >= 1 and n >= d+1, got d={d}, n={n}")
    facets = []
    for S in combinations(range(1, n + 1), d):
        members = set(S)
        if all(_contains_interval(members, k + 1, d - k + 2) for k in range(1, n + 1) if k not in members):
            facets.append(S)
    return Complex(n, facets)


def t_set(d: int, k: int) -> Face:
    """The forbidden set T_{d-k} = {k+2..d-k} ∪ {d-k+2..d+2}."""
    if not 0 <= k <= d // 2:
        raise ValueError(f"k must lie in [0, {d // 2}]")
    return tuple(range(k + 2, d - k + 1)) + tuple(range(d - k + 2, d + 3))


def torus_7() -> Complex:
    """Möbius's 7-vertex triangulation of the torus."""
    facets = []
    for i in range(7):
        facets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
        facets.append([i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1])
    return Complex(7, facets)


def cycle(n: int) -> Complex:
    return Complex(n, [(i, i % n + 1) for i in range(1, n + 1)])
