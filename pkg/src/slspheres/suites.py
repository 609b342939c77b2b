"""Named batches of checks over the standard desk-scale instances.

Each criterion function returns a :class:`Criterion` with a pass flag and
per-item details; suites group criteria and can run them in a process pool
without changing the order of the output.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable

from .complex_core import (
    Complex,
    cross_polytope_boundary,
    cyclic_polytope_boundary,
    delta_dn,
    f_vector,
    g_vector,
    h_vector,
    is_shifted,
    octahedron,
    simplex_boundary,
    torus_7,
)
from .constructions import barycentric, connected_sum, identify, join, stellar
from .exact_linalg import GenericityPolicy
from .homology import is_homology_sphere
from .lefschetz import (
    connected_sum_sl_witness,
    join_sl_witness,
    lefschetz_report,
    primitive_decomposition,
    strings_span,
)
from .rigidity import cross_validate, identification_check
from .shifting import (
    check_sl_condition,
    exterior_shift,
    hierarchy_report,
    is_m_sequence,
    symmetric_shift,
)


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool
    items: list[dict] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "pass": self.passed, "items": self.items}


def _criterion(number: int, title: str, items: list[dict]) -> Criterion:
    return Criterion(number, title, all(it["pass"] for it in items), items)


# -- instances ---------------------------------------------------------------


def stellar_instances() -> dict[str, tuple[Complex, Complex, tuple[int, ...]]]:
    """name -> (subdivided complex, original complex, subdivided face)."""
    oct_, s3 = octahedron(), simplex_boundary(3)
    cases = {
        "stellar(octahedron, 13)": (oct_, (1, 3)),
        "stellar(bd simplex3, 123)": (s3, (1, 2, 3)),
        "stellar(bd simplex3, 12)": (s3, (1, 2)),
    }
    return {name: (stellar(K, F), K, F) for name, (K, F) in cases.items()}


def suite_spheres() -> dict[str, Complex]:
    """Homology spheres used by the invariant and cross-validation checks."""
    s1, s2, s3 = simplex_boundary(1), simplex_boundary(2), simplex_boundary(3)
    oct_ = octahedron()
    out = {
        "bd simplex2": s2,
        "bd simplex3": s3,
        "bd simplex4": simplex_boundary(4),
        "octahedron": oct_,
        "bd cross4": cross_polytope_boundary(4),
        "C(2,6)": cyclic_polytope_boundary(2, 6),
        "C(3,6)": cyclic_polytope_boundary(3, 6),
        "C(3,7)": cyclic_polytope_boundary(3, 7),
        "C(4,8)": cyclic_polytope_boundary(4, 8),
        "bd simplex1 * bd simplex2": join(s1, s2),
        "octahedron * bd simplex1": join(oct_, s1),
        "bd simplex2 # bd simplex2": connected_sum(s2, s2),
        "octahedron # octahedron": connected_sum(oct_, oct_),
        "bd simplex3 # bd simplex3": connected_sum(s3, s3),
        "barycentric(bd simplex3)": barycentric(s3),
    }
    out.update({name: K for name, (K, _, _) in stellar_instances().items()})
    return out


def random_pure_complexes(count: int, seed: int) -> dict[str, Complex]:
    """Pure 2- and 3-dimensional complexes on at most 8 vertices."""
    rng = random.Random(seed)
    out = {}
    while len(out) < count:
        d = rng.choice([3, 4])
        n = rng.randint(d + 2, 8)
        pool = list(combinations(range(1, n + 1), d))
        facets = rng.sample(pool, rng.randint(max(1, len(pool) // 4), len(pool)))
        K = Complex(n, facets)
        out[f"random d={d} #{len(out)}"] = K
    return out


# -- criteria ----------------------------------------------------------------


def criterion_1(policy: GenericityPolicy) -> Criterion:
    items = []
    for d in range(1, 7):
        h = h_vector(simplex_boundary(d))
        items.append({"name": f"h(bd simplex{d})", "value": list(h), "pass": h == (1,) * (d + 1)})
    K = octahedron()
    items.append({"name": "h(octahedron)", "value": list(h_vector(K)), "pass": h_vector(K) == (1, 3, 3, 1)})
    items.append({"name": "g(octahedron)", "value": list(g_vector(K)), "pass": g_vector(K) == (1, 2)})
    h = h_vector(cyclic_polytope_boundary(4, 8))
    items.append({"name": "h(C(4,8))", "value": list(h), "pass": h == (1, 4, 10, 4, 1)})
    return _criterion(1, "vector identities", items)


UBT_CASES = [(2, 5), (2, 6), (3, 6), (3, 7), (4, 8)]


def criterion_2(policy: GenericityPolicy) -> Criterion:
    items = []
    for d, n in UBT_CASES:
        K, D = cyclic_polytope_boundary(d, n), delta_dn(d, n)
        for variant, fn in (("symmetric", symmetric_shift), ("exterior", exterior_shift)):
            res = fn(K, policy)
            items.append({
                "name": f"{variant} C({d},{n})",
                "stable": res.stable,
                "pass": res.stable and res.complex == D,
            })
    return _criterion(2, "shifting of cyclic polytopes is Delta(d,n)", items)


JOIN_CASES = [
    ("bd simplex1", "bd simplex1"),
    ("bd simplex1", "bd simplex2"),
    ("octahedron", "bd simplex1"),
    ("octahedron", "bd simplex2"),
]


def _named(name: str) -> Complex:
    if name == "octahedron":
        return octahedron()
    return simplex_boundary(int(name[len("bd simplex"):]))


def criterion_3(policy: GenericityPolicy) -> Criterion:
    items = []
    for a, b in JOIN_CASES:
        _, _, r = join_sl_witness(_named(a), _named(b), policy)
        ok = bool(r.sl) and r.sl_ranks == r.sl_targets
        items.append({"name": f"{a} * {b}", "sl_ranks": r.sl_ranks, "h": r.h, "pass": ok})
    return _criterion(3, "join keeps SL with the composed witness", items)


CONNSUM_CASES = [("bd simplex2", "bd simplex2"), ("octahedron", "octahedron"), ("bd simplex3", "bd simplex3")]


def criterion_4(policy: GenericityPolicy) -> Criterion:
    items = []
    for a, b in CONNSUM_CASES:
        r = connected_sum_sl_witness(_named(a), _named(b), policy=policy)
        items.append({"name": f"{a} # {b}", "dims": r.dims, "additivity": r.additivity, "pass": r.passed})
    return _criterion(4, "connected sum keeps SL; dimensions add", items)


def sl_instances() -> dict[str, Complex]:
    out = {name: K for name, (K, _, _) in stellar_instances().items()}
    out["barycentric(bd simplex3)"] = barycentric(simplex_boundary(3))
    out["barycentric(octahedron)"] = barycentric(octahedron())
    return out


def criterion_5(policy: GenericityPolicy) -> Criterion:
    items = []
    for name, K in sl_instances().items():
        r = lefschetz_report(K, policy)
        items.append({
            "name": name,
            "vertices": len(K.vertices),
            "sl_ranks": r.sl_ranks,
            "certification": r.certification["sl"],
            "pass": bool(r.sl),
        })
    return _criterion(5, "stellar and barycentric subdivisions are SL", items)


def criterion_6(policy: GenericityPolicy) -> Criterion:
    items = []
    for name, K in suite_spheres().items():
        r = lefschetz_report(K, policy)
        if not r.sl:
            items.append({"name": name, "pass": False, "reason": "no SL witness"})
            continue
        dec = primitive_decomposition(r.quotient, r.omega, K.d)
        g = list(g_vector(K))
        ok = (
            dec.counts == g
            and dec.total_dimension == sum(r.h)
            and strings_span(dec, r.dims, r.quotient.field)
        )
        items.append({"name": name, "counts": dec.counts, "g": g, "pass": ok})
    return _criterion(6, "string decomposition counts equal g", items)


def rigidity_instances(seed: int) -> dict[str, Complex]:
    out = dict(suite_spheres())
    out.update(random_pure_complexes(12, seed))
    # complete 2-skeleta: dense enough that the top set survives shifting
    for n in (7, 8):
        out[f"2-skeleton of simplex on {n} vertices"] = Complex(n, combinations(range(1, n + 1), 3))
    return out


def criterion_7(policy: GenericityPolicy) -> Criterion:
    items = []
    for name, K in rigidity_instances(policy.seed).items():
        r = cross_validate(K, K.d, policy)
        items.append({
            "name": name,
            "symmetric": r["symmetric"],
            "exterior": r["exterior"],
            "pass": r["agree"],
        })
    return _criterion(7, "rigidity kernels match shifting", items)


def criterion_8(policy: GenericityPolicy) -> Criterion:
    items = []
    for name, (K, original, F) in stellar_instances().items():
        new = K.n
        u = F[0]
        back = identify(K, new, u)
        r = identification_check(K, new, u, K.d, policy)
        ok = r["pass"] and r["hypothesis_identified"] and r["hypothesis_links"] and r["conclusion"]
        ok = ok and r["limit_kernel_trivial"] and back == original
        items.append({"name": name, **r, "identifies_back": back == original, "pass": ok})
    return _criterion(8, "identification hypotheses, conclusion and limit map", items)


def _relabelings(K: Complex, count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        perm = list(range(1, K.n + 1))
        rng.shuffle(perm)
        yield K.relabel(dict(zip(range(1, K.n + 1), perm)))


def criterion_9(policy: GenericityPolicy) -> Criterion:
    items = []
    spheres = suite_spheres()
    cases = {name: spheres[name] for name in ("octahedron", "C(3,6)", "bd simplex2 # bd simplex2", "stellar(bd simplex3, 12)")}
    cases.update(random_pure_complexes(4, policy.seed + 1))
    for variant, fn in (("symmetric", symmetric_shift), ("exterior", exterior_shift)):
        for name, K in cases.items():
            res = fn(K, policy)
            ok = res.stable and f_vector(res.complex) == f_vector(K) and is_shifted(res.complex)
            perm_ok = all(
                (p := fn(L, policy)).stable and p.complex == res.complex
                for L in _relabelings(K, 5, policy.seed)
            )
            items.append({"name": f"{variant} {name}", "f_and_shifted": ok, "permutation": perm_ok, "pass": ok and perm_ok})
        for d, n in UBT_CASES:
            D = delta_dn(d, n)
            res = fn(D, policy)
            items.append({"name": f"{variant} idempotent Delta({d},{n})", "pass": res.stable and res.complex == D})
    return _criterion(9, "shifting invariants", items)


def criterion_10(policy: GenericityPolicy) -> Criterion:
    items = []
    for name, K in suite_spheres().items():
        res = symmetric_shift(K, policy)
        if not res.stable:
            items.append({"name": name, "pass": False, "reason": "unstable shifting"})
            continue
        hier = hierarchy_report(res.complex, K.d)
        m_seq = is_m_sequence(g_vector(K))
        chain = (not hier.level1 or hier.level2) and (not hier.level2 or m_seq)
        sl_shift = check_sl_condition(res.complex, K.d)
        sl_ring = lefschetz_report(K, policy).sl
        items.append({
            "name": name,
            "level1": hier.level1,
            "level2": hier.level2,
            "m_sequence": m_seq,
            "sl_shifting": sl_shift,
            "sl_face_ring": sl_ring,
            "pass": chain and sl_shift == sl_ring,
        })
    return _criterion(10, "hierarchy implications and SL agreement", items)


def criterion_11(policy: GenericityPolicy) -> Criterion:
    s1, s2, s3 = simplex_boundary(1), simplex_boundary(2), simplex_boundary(3)
    oct_ = octahedron()
    spheres = {f"bd simplex{d}": simplex_boundary(d) for d in range(1, 6)}
    spheres.update({
        "octahedron": oct_,
        "bd cross4": cross_polytope_boundary(4),
        "C(3,6)": cyclic_polytope_boundary(3, 6),
        "C(4,8)": cyclic_polytope_boundary(4, 8),
        "join bd simplex1 * bd simplex2": join(s1, s2),
        "join octahedron * bd simplex1": join(oct_, s1),
        "connsum octahedron # octahedron": connected_sum(oct_, oct_),
        "connsum bd simplex3 # bd simplex3": connected_sum(s3, s3),
        "stellar octahedron": stellar(oct_, (1, 3)),
        "stellar bd simplex3 facet": stellar(s3, (1, 2, 3)),
        "barycentric bd simplex2": barycentric(s2),
        "barycentric bd simplex3": barycentric(s3),
        "barycentric octahedron": barycentric(oct_),
    })
    items = []
    for name, K in spheres.items():
        ok, bad = is_homology_sphere(K)
        items.append({"name": name, "sphere": ok, "pass": ok})
    ok, bad = is_homology_sphere(torus_7())
    items.append({"name": "7-vertex torus", "sphere": ok, "failing_face": None if bad is None else list(bad), "pass": not ok})
    return _criterion(11, "homology-sphere gatekeeping", items)


CRITERIA: dict[int, Callable[[GenericityPolicy], Criterion]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
    11: criterion_11,
}

SUITES: dict[str, list[int]] = {
    "vectors": [1],
    "ubt": [2],
    "constructions": [3, 4, 5, 6],
    "theorem-1.2": [3, 4, 5, 6],
    "cross-validate": [7, 8],
    "invariants": [9, 10, 11],
    "all": list(CRITERIA),
}


def _run_one(args) -> dict:
    number, policy = args
    return CRITERIA[number](policy).to_json()


def run_suite(name: str, policy: GenericityPolicy = GenericityPolicy(), jobs: int = 1) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    work = [(n, policy) for n in SUITES[name]]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, work))
    else:
        results = [_run_one(w) for w in work]
    return {"suite": name, "pass": all(r["pass"] for r in results), "criteria": results}
