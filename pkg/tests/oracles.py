"""Slow, independent reference computations used to freeze expected values.

Nothing here shares code with the package beyond the ``Complex`` container:
ranks and determinants come from sympy, faces from raw subset enumeration.
"""

from __future__ import annotations

from itertools import combinations, combinations_with_replacement

import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from slspheres.complex_core import Complex


def all_faces(K: Complex) -> set[tuple[int, ...]]:
    out = set()
    for F in K.facets:
        for r in range(len(F) + 1):
            out.update(combinations(F, r))
    return out


def f_vector(K: Complex) -> tuple[int, ...]:
    faces = all_faces(K)
    top = max(len(F) for F in faces)
    return tuple(sum(1 for F in faces if len(F) == i) for i in range(top + 1))


def h_vector(K: Complex) -> tuple[int, ...]:
    """Coefficients of sum_i f_{i-1} t^i (1-t)^{d-i}."""
    t = sympy.symbols("t")
    f = f_vector(K)
    d = len(f) - 1
    poly = sympy.expand(sum(f[i] * t**i * (1 - t) ** (d - i) for i in range(d + 1)))
    return tuple(int(poly.coeff(t, k)) for k in range(d + 1))


def qrank(rows) -> int:
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return DomainMatrix([[QQ(int(x)) for x in r] for r in rows], (len(rows), len(rows[0])), QQ).rank()


def moment_facets(d: int, n: int) -> set[tuple[int, ...]]:
    """Facets of the cyclic polytope: d-sets whose affine hyperplane through
    the moment-curve points leaves all other points on one side."""
    pts = {i: [sympy.Integer(i) ** k for k in range(1, d + 1)] for i in range(1, n + 1)}
    out = set()
    for S in combinations(range(1, n + 1), d):
        signs = set()
        for x in range(1, n + 1):
            if x in S:
                continue
            M = sympy.Matrix([[1] + pts[v] for v in S] + [[1] + pts[x]])
            signs.add(sympy.sign(M.det()))
        if len(signs) == 1:
            out.add(S)
    return out


def is_shifted(faces: set) -> bool:
    for S in faces:
        for j in S:
            for i in range(1, j):
                if i not in S and tuple(sorted(set(S) - {j} | {i})) not in faces:
                    return False
    return True


def link(K: Complex, F) -> set:
    F = set(F)
    return {tuple(v for v in G if v not in F) for G in all_faces(K) if F <= set(G)}


def reduced_betti(K: Complex) -> list[int]:
    faces = all_faces(K)
    top = max(len(F) for F in faces)
    by = {k: sorted(F for F in faces if len(F) == k) for k in range(top + 1)}

    def bd_rank(k):  # faces of size k -> size k-1
        if k == 0 or k > top:
            return 0
        rows = by[k - 1]
        idx = {F: i for i, F in enumerate(rows)}
        M = sympy.zeros(len(rows), len(by[k]))
        for j, F in enumerate(by[k]):
            for i in range(len(F)):
                M[idx[F[:i] + F[i + 1:]], j] = (-1) ** i
        return qrank(M.tolist())

    return [len(by[k]) - bd_rank(k) - bd_rank(k + 1) for k in range(top + 1)]


# -- face ring ----------------------------------------------------------------


def monomials(K: Complex, r: int) -> list[tuple[int, ...]]:
    faces = all_faces(K)
    return sorted(m for m in combinations_with_replacement(range(1, K.n + 1), r) if tuple(sorted(set(m))) in faces)


def quotient_dims(K: Complex, theta, top: int) -> list[int]:
    """dim F[K]_i - rank of the Macaulay matrix, via sympy polynomials."""
    xs = sympy.symbols(f"x1:{K.n + 1}")
    forms = [sum(c * x for c, x in zip(row, xs)) for row in theta]
    dims = []
    for i in range(top + 1):
        basis = monomials(K, i)
        if i == 0 or not forms:
            dims.append(len(basis))
            continue
        index = {m: k for k, m in enumerate(basis)}
        rows = []
        for m in monomials(K, i - 1):
            mono = sympy.Mul(*[xs[v - 1] for v in m])
            for f in forms:
                row = [0] * len(basis)
                for term, c in sympy.Poly(sympy.expand(f * mono), *xs).terms():
                    key = tuple(v + 1 for v, e in enumerate(term) for _ in range(e))
                    if key in index:
                        row[index[key]] += c
                rows.append(row)
        dims.append(len(basis) - qrank(rows))
    return dims


def power_rank(K: Complex, theta, omega, i: int, k: int) -> int:
    """rank of ω^k: H_i -> H_{i+k} as rank[Mac_{i+k}; ω^k·F_i] - rank Mac_{i+k}."""
    xs = sympy.symbols(f"x1:{K.n + 1}")
    forms = [sum(c * x for c, x in zip(row, xs)) for row in theta]
    w = sum(c * x for c, x in zip(omega, xs))
    target = monomials(K, i + k)
    index = {m: j for j, m in enumerate(target)}

    def vec(poly):
        row = [0] * len(target)
        for term, c in sympy.Poly(sympy.expand(poly), *xs).terms():
            key = tuple(v + 1 for v, e in enumerate(term) for _ in range(e))
            if key in index:
                row[index[key]] += c
        return row

    mac = [vec(f * sympy.Mul(*[xs[v - 1] for v in m])) for m in monomials(K, i + k - 1) for f in forms]
    img = [vec(w**k * sympy.Mul(*[xs[v - 1] for v in m])) for m in monomials(K, i)]
    return qrank(mac + img) - qrank(mac)


# -- shifting -------------------------------------------------------------------


def exterior_shift(K: Complex, A) -> set:
    """Δ^e from sympy minors det A[S | T] and sympy ranks."""
    faces = all_faces(K)
    n = K.n
    M = sympy.Matrix(A)
    out = {()}
    top = max(len(F) for F in faces)
    for j in range(1, top + 1):
        Ts = sorted(F for F in faces if len(F) == j)
        chosen_rows = []
        for S in combinations(range(1, n + 1), j):
            row = [M.extract([s - 1 for s in S], [t - 1 for t in T]).det() for T in Ts]
            if qrank(chosen_rows + [row]) > len(chosen_rows):
                chosen_rows.append(row)
                out.add(S)
    return out


def symmetric_shift(K: Complex, Y) -> set:
    """Δ^s from explicit polynomial expansion of y-monomials."""
    faces = all_faces(K)
    n = K.n
    xs = sympy.symbols(f"x1:{n + 1}")
    ys = [sum(c * x for c, x in zip(row, xs)) for row in Y]
    top = max(len(F) for F in faces)
    out = {()}
    for r in range(1, top + 1):
        basis = monomials(K, r)
        index = {m: k for k, m in enumerate(basis)}
        chosen = []
        for m in combinations_with_replacement(range(1, n + 1), r):
            poly = sympy.expand(sympy.Mul(*[ys[i - 1] for i in m]))
            row = [0] * len(basis)
            for term, c in sympy.Poly(poly, *xs).terms():
                key = tuple(v + 1 for v, e in enumerate(term) for _ in range(e))
                if key in index:
                    row[index[key]] += c
            if qrank(chosen + [row]) > len(chosen):
                chosen.append(row)
                if m[0] >= r:
                    out.add(tuple(i - r + k for k, i in enumerate(m, start=1)))
    closed = set()
    for S in out:
        for k in range(len(S) + 1):
            closed.update(combinations(S, k))
    return closed


# -- multicomplexes -------------------------------------------------------------


def multicomplex_exists(g) -> bool:
    """Exhaustive search for an order ideal of monomials in g_1 variables
    with exactly g_i monomials in degree i."""
    g = list(g)
    if not g or g[0] != 1 or any(x < 0 for x in g):
        return False
    if len(g) == 1:
        return True
    nvars = g[1]

    def search(level: int, current: set) -> bool:
        if level == len(g):
            return True
        cands = [
            m for m in combinations_with_replacement(range(nvars), level)
            if all(m[:k] + m[k + 1:] in current for k in range(level))
        ]
        if len(cands) < g[level]:
            return False
        for pick in combinations(cands, g[level]):
            if search(level + 1, set(pick)):
                return True
        return False

    return search(2, set(combinations_with_replacement(range(nvars), 1)))



# -- rigidity -------------------------------------------------------------------


def rigidity_kernel_dim(K: Complex, d: int, psi, limit=None) -> int:
    """dim ker of ⊕_F (ψ(T∖F) mod span ψ(F)) over the d-faces T.

    Quotients are never formed: with the spanning vectors of every block
    appended as free columns, the kernel of the quotient map has dimension
    #columns - (rank[M | D] - rank D).  ``limit`` optionally gives, per
    (d-1)-set F, the vectors spanning its block and, per (T, F), the vector
    placed there.
    """
    cols = sorted(F for F in all_faces(K) if len(F) == d)
    verts = sorted({v for F in all_faces(K) for v in F})
    blocks = list(combinations(verts, d - 1))
    m = 2 * d
    span = {F: [psi[v] for v in F] for F in blocks}
    entry = {}
    for T in cols:
        for F in combinations(T, d - 1):
            (w,) = set(T) - set(F)
            entry[T, F] = psi[w]
    if limit is not None:
        span, entry = limit(span, entry)
    rows = m * len(blocks)
    M = [[0] * len(cols) for _ in range(rows)]
    Dcols = []
    for b, F in enumerate(blocks):
        for vec in span[F]:
            col = [0] * rows
            for k in range(m):
                col[b * m + k] = vec[k]
            Dcols.append(col)
    for c, T in enumerate(cols):
        for F in combinations(T, d - 1):
            b = blocks.index(F)
            for k in range(m):
                M[b * m + k][c] = entry[T, F][k]
    D = [[col[r] for col in Dcols] for r in range(rows)]
    full = [M[r] + D[r] for r in range(rows)]
    rD = qrank(D) if Dcols else 0
    return len(cols) - (qrank(full) - rD)
