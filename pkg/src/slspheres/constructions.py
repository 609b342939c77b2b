"""Join, connected sum, stellar and barycentric subdivision, vertex
identification and the Link Condition."""

from __future__ import annotations

from typing import Iterable, Mapping

from .complex_core import Complex, ComplexError, NotAFaceError, _as_face, link

VertexMap = Mapping[int, int]


def join(K: Complex, L: Complex) -> Complex:
    """K * L, with L's vertices shifted to n_K+1..n_K+n_L."""
    shift = K.n
    facets = [F + tuple(v + shift for v in G) for F in K.facets for G in L.facets]
    return Complex(K.n + L.n, facets)


def join_all(*Ks: Complex) -> Complex:
    out = Ks[0]
    for K in Ks[1:]:
        out = join(out, K)
    return out


def cone(K: Complex) -> Complex:
    """Cone with apex 1 (join of a point with K)."""
    return join(Complex(1, [(1,)]), K)


def glue_relabeling(K: Complex, L: Complex, glue: VertexMap | None = None) -> dict[int, int]:
    """Labels of L's vertices inside K #_σ L.

    ``glue`` maps the vertices of a facet of L onto a facet of K; when
    omitted, the lex-first facets are matched in order.  L's remaining
    vertices receive n_K+1, n_K+2, ... in increasing order.
    """
    if glue is None:
        glue = dict(zip(L.facets[0], K.facets[0]))
    glue = {int(a): int(b) for a, b in glue.items()}
    source = _as_face(glue)
    target = _as_face(glue.values())
    if len(target) != len(source):
        raise ComplexError("glue map is not injective")
    if source not in L.facets:
        raise ComplexError(f"glue domain {source} is not a facet of L")
    if target not in K.facets:
        raise ComplexError(f"glue image {target} is not a facet of K")
    mapping = dict(glue)
    nxt = K.n
    for v in range(1, L.n + 1):
        if v not in mapping:
            nxt += 1
            mapping[v] = nxt
    return mapping


def connected_sum(K: Complex, L: Complex, glue: VertexMap | None = None) -> Complex:
    """K #_σ L = (K ∪ L) minus the open facet σ along which they are glued."""
    if not (K.is_pure() and L.is_pure()) or K.dim != L.dim:
        raise ComplexError("connected sum needs pure complexes of equal dimension")
    if glue is None:
        glue = dict(zip(L.facets[0], K.facets[0]))
    mapping = glue_relabeling(K, L, glue)
    n = K.n + L.n - K.d
    L2 = L.relabel(mapping, n)
    sigma = _as_face(glue.values())
    common = K.face_set & L2.face_set
    allowed = Complex(n, [sigma]).face_set
    if not common <= allowed:
        raise ComplexError("after gluing, K ∩ L is larger than the closed facet σ")
    facets = (set(K.facets) | set(L2.facets)) - {sigma}
    return Complex(n, facets)


def stellar(K: Complex, F: Iterable[int]) -> Complex:
    """Stellar subdivision at F with the new vertex labeled n+1."""
    F = _as_face(F)
    if not F or F not in K.face_set:
        raise NotAFaceError(f"{F} is not a nonempty face")
    v = K.n + 1
    s = set(F)
    facets = [G for G in K.facets if not s <= set(G)]
    for G in K.facets:
        if s <= set(G):
            for f in F:
                facets.append(tuple(x for x in G if x != f) + (v,))
    return Complex(v, facets)


def barycentric(K: Complex) -> Complex:
    """Stellar subdivisions at all faces of positive dimension, larger faces
    first, lex order among faces of equal size."""
    order = [F for size in sorted(K.faces_by_size, reverse=True) if size >= 2 for F in K.faces_by_size[size]]
    out = K
    for F in order:
        out = stellar(out, F)
    return out


def identify(K: Complex, u: int, v: int) -> Complex:
    """Replace u by v in every face; labels above u then shift down by one."""
    if u == v:
        raise ComplexError("cannot identify a vertex with itself")
    if (u,) not in K.face_set or (v,) not in K.face_set:
        raise NotAFaceError("both u and v must be vertices")
    images = [tuple(v if x == u else x for x in G) for G in K.facets]
    relabel = {x: (x - 1 if x > u else x) for x in range(1, K.n + 1) if x != u}
    return Complex.from_faces(K.n - 1, (tuple(relabel[x] for x in set(G)) for G in images))


def link_condition(K: Complex, a: int, b: int) -> bool:
    """lk(a) ∩ lk(b) == lk({a, b}) as face sets."""
    if _as_face((a, b)) not in K.face_set:
        raise NotAFaceError(f"{{{a}, {b}}} is not an edge")
    lab = link(K, (a,)).face_set & link(K, (b,)).face_set
    return lab == link(K, (a, b)).face_set


def contract(K: Complex, a: int, b: int) -> Complex:
    """Edge contraction a ↦ b, refused when the Link Condition fails."""
    if not link_condition(K, a, b):
        raise ComplexError(f"Link Condition fails for {a}, {b}")
    return identify(K, a, b)
