"""Exterior and symmetric algebraic shifting, the shifted-complex criteria
for CM/SL/WWL, the g-conjecture hierarchy, and Macaulay's M-sequences.

Both shiftings run over a random prime field standing in for a generic
extension of Q.  Each trial uses a fresh matrix and a fresh prime; the
result is reported as stable only when every trial produces the same
complex.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Sequence

import numpy as np

from .complex_core import (
    Complex,
    Face,
    cyclic_polytope_boundary,
    delta_dn,
    f_vector,
    t_set,
)
from .exact_linalg import (
    QQ,
    FieldSpec,
    GenericityPolicy,
    fast_field,
    random_matrix,
    rank_profile_matrix,
)
from .face_ring import Monomial, face_ring


class ShiftingConsistencyError(RuntimeError):
    pass


@dataclass
class GinMonomialSet:
    """gin(K): y-monomials y_{i1}...y_{ir} in GIN(K) with r <= i1."""

    monomials: list[Monomial]

    @property
    def faces(self) -> list[Face]:
        return [s_of(m) for m in self.monomials]


@dataclass
class ShiftResult:
    variant: str
    complex: Complex | None
    stable: bool
    policy: GenericityPolicy
    field: FieldSpec
    trial_faces: list[list[Face]] = dc_field(default_factory=list)
    gin: GinMonomialSet | None = None

    def to_json(self) -> dict:
        out = {
            "variant": self.variant,
            "stable": self.stable,
            "policy": self.policy.to_json(),
            "field": str(self.field),
            "complex": None if self.complex is None else self.complex.to_json(),
        }
        if not self.stable:
            out["trial_faces"] = [[list(f) for f in fs] for fs in self.trial_faces]
        return out


def s_of(m: Monomial) -> Face:
    """S(m) = {i_1 - r + 1, i_2 - r + 2, ..., i_r}."""
    r = len(m)
    return tuple(i - r + k for k, i in enumerate(m, start=1))


def y_monomial_less(a: Monomial, b: Monomial) -> bool:
    """∏ y_i^{a_i} < ∏ y_i^{b_i} iff at the first index where the exponents
    differ, a has the larger exponent.  Monomials are sorted index tuples."""
    if len(a) != len(b):
        raise ValueError("monomials of different degrees are not compared")
    ea: dict[int, int] = {}
    eb: dict[int, int] = {}
    for i in a:
        ea[i] = ea.get(i, 0) + 1
    for i in b:
        eb[i] = eb.get(i, 0) + 1
    for i in sorted(set(ea) | set(eb)):
        if ea.get(i, 0) != eb.get(i, 0):
            return ea.get(i, 0) > eb.get(i, 0)
    return False


def _closure(n: int, faces: Sequence[Face]) -> Complex:
    return Complex.from_faces(n, faces)


def _collect(variant: str, K: Complex, policy: GenericityPolicy, field: FieldSpec, per_trial) -> ShiftResult:
    results = []
    gins = []
    C, mapping = K.compact()
    for t in range(policy.trials):
        faces, gin = per_trial(C, t, fast_field(field, policy, t))
        results.append(sorted(faces))
        gins.append(gin)
    stable = all(r == results[0] for r in results)
    out = _closure(K.n, results[0]) if stable else None
    if out is not None and not C.vertices:
        out = Complex(K.n, [()])
    return ShiftResult(
        variant,
        out,
        stable,
        policy,
        field,
        trial_faces=[] if stable else results,
        gin=gins[0],
    )


# -- exterior ----------------------------------------------------------------


def _exterior_trial(K: Complex, A: np.ndarray, field: FieldSpec) -> list[Face]:
    n = K.n
    chosen: list[Face] = []
    # C[S, T] = det A[S | T] for S a j-subset of [n], T a j-face of K
    prev_index = {(): 0}
    prev = field.identity(1)
    for j in range(1, K.d + 1):
        subsets = list(combinations(range(1, n + 1), j))
        Tfaces = K.faces_by_size.get(j, [])
        if not Tfaces:
            break
        first = np.array([S[0] - 1 for S in subsets], dtype=np.intp)
        rest = np.array([prev_index[S[1:]] for S in subsets], dtype=np.intp)
        sub_index = K.face_index[j - 1]
        C = field.zeros((len(subsets), len(Tfaces)))
        for c, T in enumerate(Tfaces):
            col = field.zeros(len(subsets))
            for pos, k in enumerate(T):
                minor = prev[rest, sub_index[T[:pos] + T[pos + 1 :]]]
                term = field.normalize(A[first, k - 1] * minor)
                col = field.normalize(col - term if pos % 2 else col + term)
            C[:, c] = col
        picked = rank_profile_matrix(C.T, field)
        chosen.extend(subsets[p] for p in picked)
        prev, prev_index = C, {S: i for i, S in enumerate(subsets)}
    return chosen


def exterior_shift(K: Complex, policy: GenericityPolicy = GenericityPolicy(), field: FieldSpec = QQ) -> ShiftResult:
    """Δ^e(K): S is kept iff f̃_S is independent of the f̃_{S'} with S' <_L S."""

    def trial(C: Complex, t: int, work: FieldSpec):
        A = work.array(random_matrix(policy, t, C.n, C.n, "exterior"))
        return _exterior_trial(C, A, work), None

    return _collect("exterior", K, policy, field, trial)


# -- symmetric ---------------------------------------------------------------


def _symmetric_trial(K: Complex, Y: np.ndarray, field: FieldSpec) -> tuple[list[Face], list[Monomial]]:
    n = K.n
    top = K.d
    ring = face_ring(K, top)
    gin: list[Monomial] = []
    prev_monos: list[Monomial] = [()]
    prev = field.identity(1)
    for r in range(1, top + 1):
        monos = list(combinations_with_replacement(range(1, n + 1), r))
        prev_index = {m: i for i, m in enumerate(prev_monos)}
        V = field.zeros((len(monos), ring.dim(r)))
        for i in range(1, n + 1):
            rows = [k for k, m in enumerate(monos) if m[0] == i]
            if not rows:
                continue
            parents = [prev_index[monos[k][1:]] for k in rows]
            V[rows] = ring.multiply(prev[parents], r - 1, Y[i - 1], field)
        picked = rank_profile_matrix(V.T, field) if ring.dim(r) else []
        gin.extend(monos[p] for p in picked if monos[p][0] >= r)
        prev, prev_monos = V, monos
    return [s_of(m) for m in gin], gin


def symmetric_shift(K: Complex, policy: GenericityPolicy = GenericityPolicy(), field: FieldSpec = QQ) -> ShiftResult:
    """Δ^s(K) = ∪ S(m) over gin(K), from GIN(K) up to degree dim(K)+1.

    Monomials of one degree are enumerated as sorted index tuples in
    lexicographic order, which is exactly the order of
    :func:`y_monomial_less`.
    """

    def trial(C: Complex, t: int, work: FieldSpec):
        Y = work.array(random_matrix(policy, t, C.n, C.n, "symmetric"))
        faces, gin = _symmetric_trial(C, Y, work)
        return faces, GinMonomialSet(gin)

    return _collect("symmetric", K, policy, field, trial)


def shift(K: Complex, variant: str, policy: GenericityPolicy = GenericityPolicy(), field: FieldSpec = QQ) -> ShiftResult:
    if variant in ("e", "exterior"):
        return exterior_shift(K, policy, field)
    if variant in ("s", "symmetric"):
        return symmetric_shift(K, policy, field)
    raise ValueError(f"unknown shifting variant {variant!r}")


# -- criteria on shifted complexes ---------------------------------------------


def _faces(D: Complex):
    for size, fs in D.faces_by_size.items():
        for S in fs:
            yield size, S


def _with(S: Face, extra) -> Face:
    return tuple(sorted(set(S) | set(extra)))


def check_cm_condition(D: Complex, d: int) -> bool:
    """Purity plus S ∈ Δ, |S| = k  ⇒  [d-k] ∪ S ∈ Δ."""
    if not D.is_pure():
        return False
    fs = D.face_set
    return all(_with(S, range(1, d - k + 1)) in fs for k, S in _faces(D) if k <= d)


def check_sl_condition(D: Complex, d: int) -> bool:
    """Δ ⊆ Δ(d), decided both by containment and by avoiding T_d..T_{⌈d/2⌉}."""
    if D.dim > d - 1:
        return False
    big = delta_dn(d, max(D.n, d + 2)).face_set
    contained = D.face_set <= big
    fs = D.face_set
    avoids = all(t_set(d, k) not in fs for k in range(d // 2 + 1))
    if contained != avoids:
        raise ShiftingConsistencyError(
            f"containment in Δ({d}) says {contained}, T-set avoidance says {avoids}"
        )
    return contained


def check_wwl_condition(D: Complex, d: int) -> bool:
    """The CM condition plus S ∈ Δ, |S| = k < ⌊d/2⌋ ⇒ {d-k+1} ∪ S ∈ Δ."""
    if not check_cm_condition(D, d):
        return False
    fs = D.face_set
    return all(_with(S, (d - k + 1,)) in fs for k, S in _faces(D) if k < d // 2)


def wwl_sufficient(D: Complex, d: int) -> bool:
    """Δ pure and every face with fewer than ⌊d/2⌋ vertices lies in two facets."""
    if not D.is_pure():
        return False
    for k, S in _faces(D):
        if k < d // 2 and sum(1 for F in D.facets if set(S) <= set(F)) < 2:
            return False
    return True


@dataclass
class HierarchyReport:
    level1: bool
    level2: bool
    witness1: Face | None
    witness2: Face | None

    def to_json(self) -> dict:
        return {
            "level1": self.level1,
            "level2": self.level2,
            "witness1": None if self.witness1 is None else list(self.witness1),
            "witness2": None if self.witness2 is None else list(self.witness2),
        }


def hierarchy_report(D: Complex, d: int) -> HierarchyReport:
    """Levels (1) and (2) of the shifting form of the g-conjecture hierarchy,
    each with its first violating face."""
    fs = D.face_set
    half, up = d // 2, (d + 1) // 2
    w1 = w2 = None
    for k, S in _faces(D):
        if any(v <= d - k + 1 for v in S):
            continue
        if w1 is None and k <= half and _with(S, range(k + 2, d - k + 2)) not in fs:
            w1 = S
        if w2 is None and k < half and _with(S, range(up + 2, d - k + 2)) not in fs:
            w2 = S
    return HierarchyReport(w1 is None, w2 is None, w1, w2)


def check_ubt(K: Complex, d: int, policy: GenericityPolicy = GenericityPolicy(), variant: str = "symmetric") -> dict:
    """Δ(K) ⊆ Δ(d), and the implied bound f(K) <= f(C(d, n)) componentwise."""
    res = shift(K, variant, policy)
    contained = res.stable and check_sl_condition(res.complex, d)
    n = len(K.vertices)
    fK = f_vector(K)
    bound = f_vector(cyclic_polytope_boundary(d, n)) if n >= d + 1 else None
    f_ok = bound is not None and len(fK) <= len(bound) and all(a <= b for a, b in zip(fK, bound))
    return {
        "stable": res.stable,
        "contained": contained,
        "f": list(fK),
        "f_cyclic": None if bound is None else list(bound),
        "f_bound": f_ok,
        "pass": bool(contained and f_ok),
    }


# -- M-sequences -------------------------------------------------------------


def macaulay_representation(a: int, i: int) -> list[tuple[int, int]]:
    """a = C(k_i, i) + C(k_{i-1}, i-1) + ... with k_i > k_{i-1} > ... >= j >= 1."""
    out = []
    while a > 0 and i > 0:
        k = i
        while comb(k + 1, i) <= a:
            k += 1
        out.append((k, i))
        a -= comb(k, i)
        i -= 1
    return out


def pseudo_power(a: int, i: int) -> int:
    """a^{<i>}: raise each C(k, j) in the i-th Macaulay representation to C(k+1, j+1)."""
    return sum(comb(k + 1, j + 1) for k, j in macaulay_representation(a, i))


def is_m_sequence(g: Sequence[int]) -> bool:
    """Macaulay's criterion: g_0 = 1, g_i >= 0 and g_{i+1} <= g_i^{<i>}."""
    g = list(g)
    if not g or g[0] != 1 or any(x < 0 for x in g):
        return False
    return all(g[i + 1] <= pseudo_power(g[i], i) for i in range(1, len(g) - 1))
