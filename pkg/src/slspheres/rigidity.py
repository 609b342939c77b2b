"""Higher rigidity maps and their shifting counterparts.

``psi_matrix`` realizes ψ_K^{2d}: a column per d-face T, a row block per
(d-1)-subset F of the vertex set, block F holding the coordinates of
ψ(T∖F) in R^{2d}/span ψ(F).  Quotient coordinates are given by a basis of
the left null space of the vectors ψ(F), so a vector x is sent to (λ·x)
for λ in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Mapping

import numpy as np

from .complex_core import Complex, ComplexError, Face, link
from .constructions import identify
from .exact_linalg import (
    QQ,
    FieldSpec,
    GenericityPolicy,
    fast_field,
    kernel_basis,
    random_matrix,
    rank,
)
from .shifting import symmetric_shift, exterior_shift

Embedding = Mapping[int, list]


@dataclass
class RigidityMatrix:
    matrix: np.ndarray
    blocks: list[Face]
    block_rows: list[np.ndarray]
    columns: list[Face]
    field: FieldSpec
    offsets: list[int] = dc_field(default_factory=list)

    def block(self, F: Face, column: Face) -> np.ndarray:
        b = self.blocks.index(F)
        c = self.columns.index(column)
        return self.matrix[self.offsets[b] : self.offsets[b + 1], c]


def generic_embedding(K: Complex, dim: int, policy: GenericityPolicy, trial: int = 0, label: str = "psi") -> dict[int, list[int]]:
    rows = random_matrix(policy, trial, K.n, dim, label)
    return {v: rows[v - 1] for v in K.vertices}


def _quotient_basis(vectors: list, dim: int, field: FieldSpec, rng: np.random.Generator | None = None) -> np.ndarray:
    """Rows λ spanning {λ : λ·x = 0 for x in vectors}, optionally in a random basis."""
    if vectors:
        basis = kernel_basis(field.array(vectors), field)
    else:
        basis = list(field.identity(dim))
    B = np.stack(basis) if basis else field.zeros((0, dim))
    if rng is not None and B.shape[0]:
        while True:
            G = field.array(rng.integers(-50, 51, size=(B.shape[0], B.shape[0])))
            if rank(G, field) == B.shape[0]:
                return field.matmul(G, B)
    return B


def _assemble(blocks, block_rows, columns, entry, field) -> RigidityMatrix:
    offsets = [0]
    for R in block_rows:
        offsets.append(offsets[-1] + R.shape[0])
    M = field.zeros((offsets[-1], len(columns)))
    position = {F: b for b, F in enumerate(blocks)}
    for c, T in enumerate(columns):
        for F in combinations(T, len(T) - 1):
            b = position[F]
            vec = entry(T, F)
            if vec is not None:
                M[offsets[b] : offsets[b + 1], c] = vec
    return RigidityMatrix(M, list(blocks), block_rows, list(columns), field, offsets)


def psi_matrix(
    K: Complex,
    d: int,
    embedding: Embedding,
    field: FieldSpec = QQ,
    rng: np.random.Generator | None = None,
) -> RigidityMatrix:
    """ψ_K^{2d} for an embedding of the vertices into (2d)-space."""
    vertices = K.vertices
    for v in vertices:
        if len(embedding[v]) != 2 * d:
            raise ComplexError(f"embedding must be into dimension {2 * d}")
    psi = {v: field.array(list(embedding[v])).reshape(-1) for v in vertices}
    blocks = list(combinations(vertices, d - 1))
    block_rows = [_quotient_basis([psi[v] for v in F], 2 * d, field, rng) for F in blocks]
    rows = dict(zip(blocks, block_rows))

    def entry(T, F):
        (w,) = set(T) - set(F)
        return field.matmul(rows[F], psi[w].reshape(-1, 1)).reshape(-1)

    return _assemble(blocks, block_rows, K.faces_by_size.get(d, []), entry, field)


def degeneration_matrix(
    K: Complex,
    u: int,
    v: int,
    d: int,
    embedding: Embedding,
    field: FieldSpec = QQ,
) -> RigidityMatrix:
    """The limit ψ_0^{2d} of moving ψ(u) onto ψ(v).

    Blocks F ⊇ {u, v} keep R^{2d}/span ψ(F); other blocks use ψ_0, which
    sends u to ψ(v).  For a d-face T ⊇ {u, v} the entry on T∖v is
    ψ(u) - ψ(v) and the entry on T∖u is its negative, both read modulo
    span ψ(T∖u).
    """
    if u == v:
        raise ComplexError("u and v must be distinct")
    vertices = K.vertices
    psi = {w: field.array(list(embedding[w])).reshape(-1) for w in vertices}
    psi0 = dict(psi)
    psi0[u] = psi[v]
    blocks = list(combinations(vertices, d - 1))

    def span_key(F):
        if u in F and v in F:
            return ("orig", F)
        return ("limit", tuple(sorted(set(v if x == u else x for x in F))))

    cache: dict = {}
    block_rows = []
    for F in blocks:
        key = span_key(F)
        if key not in cache:
            source = psi if key[0] == "orig" else psi0
            members = F if key[0] == "orig" else key[1]
            cache[key] = _quotient_basis([source[w] for w in members], 2 * d, field)
        block_rows.append(cache[key])
    rows = dict(zip(blocks, block_rows))
    direction = field.normalize(psi[u] - psi[v])

    def entry(T, F):
        (w,) = set(T) - set(F)
        if u in T and v in T and w in (u, v):
            vec = direction if w == v else field.normalize(-direction)
        elif u in F and v in F:
            vec = psi[w]
        else:
            vec = psi0[w]
        return field.matmul(rows[F], vec.reshape(-1, 1)).reshape(-1)

    return _assemble(blocks, block_rows, K.faces_by_size.get(d, []), entry, field)


def sign_identity_holds(R: RigidityMatrix, u: int, v: int) -> bool:
    """Entries on T∖v are the negatives of those on T∖u for every T ⊇ {u, v}."""
    for T in R.columns:
        if u in T and v in T:
            a = R.block(tuple(x for x in T if x != v), T)
            b = R.block(tuple(x for x in T if x != u), T)
            if not np.array_equal(R.field.normalize(a + b), R.field.zeros(a.shape)):
                return False
    return True


def psi_ext_matrix(K: Complex, d: int, A, field: FieldSpec = QQ) -> RigidityMatrix:
    """(f_1⌊m, ..., f_{d+1}⌊m) on span{e_T : T a d-face of K}.

    With e_t⌊e_T = (-1)^{position of t in T} e_{T∖t}, the row for (i, F)
    and the column T ⊇ F hold A[i, t]·(-1)^{pos(t, T)} where T∖F = {t}.
    """
    A = field.array(A)
    if A.ndim != 2 or A.shape[0] != d + 1 or A.shape[1] != K.n:
        raise ValueError(f"A must have {d + 1} rows of length {K.n}")
    vertices = K.vertices
    blocks = list(combinations(vertices, d - 1))
    block_rows = [field.identity(d + 1) for _ in blocks]

    def entry(T, F):
        (t,) = set(T) - set(F)
        sign = -1 if T.index(t) % 2 else 1
        return field.normalize(A[:, t - 1] * sign)

    return _assemble(blocks, block_rows, K.faces_by_size.get(d, []), entry, field)


def _blocks_generic(R: RigidityMatrix, d: int) -> bool:
    """Every quotient R^{2d}/span ψ(F) has dimension d+1.

    When this holds modulo p the block bases are reductions of valid
    rational bases (same pivot columns), so a full column rank modulo p
    proves injectivity over Q.
    """
    return all(B.shape[0] == d + 1 for B in R.block_rows)


def kernel_trivial(M: RigidityMatrix | np.ndarray, field: FieldSpec | None = None) -> bool:
    """Whether the map is injective (full column rank), computed exactly."""
    if isinstance(M, RigidityMatrix):
        field = M.field if field is None else field
        M = M.matrix
    return rank(M, field or QQ) == M.shape[1]


def generic_kernel_trivial(
    K: Complex, d: int, policy: GenericityPolicy = GenericityPolicy(), variant: str = "symmetric", field: FieldSpec = QQ
) -> bool:
    """Some trial gives an injective map.  Entries are integers, so a
    full-rank reduction modulo a prime proves injectivity over Q."""
    for t in range(policy.trials):
        work = fast_field(field, policy, t)
        if variant == "symmetric":
            M = psi_matrix(K, d, generic_embedding(K, 2 * d, policy, t), work)
            if not _blocks_generic(M, d):
                continue
        else:
            A = random_matrix(policy, t, d + 1, K.n, "psi-ext")
            M = psi_ext_matrix(K, d, A, work)
        if kernel_trivial(M):
            return True
    return False


def top_set(d: int) -> Face:
    """{d+2, ..., 2d+1}."""
    return tuple(range(d + 2, 2 * d + 2))


def cross_validate(K: Complex, d: int, policy: GenericityPolicy = GenericityPolicy()) -> dict:
    """Both rigidity equivalences, each side computed independently."""
    target = top_set(d)
    out = {"d": d}
    for variant, shifter in (("symmetric", symmetric_shift), ("exterior", exterior_shift)):
        res = shifter(K, policy)
        if not res.stable:
            out[variant] = {"stable": False, "agree": False}
            continue
        absent = target not in res.complex.face_set
        trivial = generic_kernel_trivial(K, d, policy, variant)
        out[variant] = {"stable": True, "kernel_trivial": trivial, "absent": absent, "agree": trivial == absent}
    out["agree"] = all(out[v]["agree"] for v in ("symmetric", "exterior"))
    return out


def identification_check(
    K: Complex, u: int, v: int, d: int, policy: GenericityPolicy = GenericityPolicy()
) -> dict:
    """Hypotheses, conclusion and the limit map for identifying u with v.

    Hypotheses: {d+2..2d+1} ∉ Δ^s(K') for K' = K with u glued to v, and
    {d+1..2d-1} ∉ Δ^s(lk(u) ∩ lk(v)).  Conclusion: {d+2..2d+1} ∉ Δ^s(K).
    """
    Kp = identify(K, u, v)
    common = Complex.from_faces(K.n, link(K, (u,)).face_set & link(K, (v,)).face_set)

    def absent(C, S):
        res = symmetric_shift(C, policy)
        return res.stable and S not in res.complex.face_set

    hyp1 = absent(Kp, top_set(d))
    hyp2 = absent(common, tuple(range(d + 1, 2 * d)))
    concl = absent(K, top_set(d))
    limit_trivial = False
    sign_ok = True
    for t in range(policy.trials):
        work = fast_field(QQ, policy, t)
        R = degeneration_matrix(K, u, v, d, generic_embedding(K, 2 * d, policy, t, "psi0"), work)
        sign_ok = sign_ok and sign_identity_holds(R, u, v)
        if _blocks_generic(R, d) and kernel_trivial(R):
            limit_trivial = True
            break
    return {
        "hypothesis_identified": hyp1,
        "hypothesis_links": hyp2,
        "conclusion": concl,
        "limit_kernel_trivial": limit_trivial,
        "sign_identity": sign_ok,
        "pass": (not (hyp1 and hyp2) or (concl and limit_trivial)) and sign_ok,
    }
