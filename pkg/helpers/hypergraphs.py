# helpers/hypergraphs.py
#
# Hypergraphs, Zhu's categorical product, the edge complex B_edge(H) with its
# cyclic shift, free Z/p-posets with their compatibility hypergraphs, and the
# chromatic lower bounds built on top of hind.

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

import config
from helpers.actions import face_permutation, validate_action
from helpers.complexes import (
    GPoset,
    SimplicialMap,
    face_poset,
    from_maximal_faces,
    is_simplicial_map,
    join,
    order_complex,
    poset_product,
    simplex,
    skeleton,
)
from helpers.errors import (
    BadCertificate,
    BadParams,
    BadR,
    CapExceeded,
    EmptyComplex,
    InvalidComplex,
    InvalidPoset,
    NotAPrime,
    NotFree,
    NotProperColoring,
    NotUniform,
    PMismatch,
    TargetMismatch,
    WrongOrder,
)
from helpers.fpalg import is_prime
from helpers.index import coindex_certificate_check, hind
from helpers.log_utils import log_debug

INFINITE = math.inf


def _ceil_div(a, b):
    return -(-a // b)


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        for edge in self.edges:
            if not edge:
                raise BadParams("hypergraph has an empty edge")
            if min(edge) < 0 or max(edge) >= self.n:
                raise BadParams(f"edge {sorted(edge)} uses a vertex outside 0..{self.n - 1}",
                                witness=sorted(edge))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, frozenset(frozenset(int(v) for v in edge) for edge in edges))

    @cached_property
    def incidence(self):
        """incidence[v] = edges containing v."""
        out = [[] for _ in range(self.n)]
        for edge in self.edges:
            for v in edge:
                out[v].append(edge)
        return out

    def is_uniform(self, r):
        return all(len(edge) == r for edge in self.edges)


def from_graph(G):
    return Hypergraph(G.n, frozenset(frozenset(e) for e in G.edges))


def kneser_hypergraph(n, k, r):
    """k-subsets of [n] in lexicographic order; an edge is r pairwise disjoint subsets."""
    if k < 1 or r < 2 or n < r * k:
        raise BadParams(f"Kneser hypergraph needs k ≥ 1, r ≥ 2 and n ≥ rk, got n={n}, k={k}, r={r}")
    subsets = [frozenset(s) for s in itertools.combinations(range(n), k)]
    edges = []
    for combo in itertools.combinations(range(len(subsets)), r):
        union = set()
        for i in combo:
            if subsets[i] & union:
                break
            union |= subsets[i]
        else:
            edges.append(combo)
    return Hypergraph.from_edges(len(subsets), edges)


# ─────────────────────────────────────────────
# Coloring
# ─────────────────────────────────────────────

def is_proper_coloring(H, c):
    return len(c) == H.n and all(len({c[v] for v in edge}) >= 2 for edge in H.edges)


def _try_hyper_color(H, order, k):
    # an edge is checked once its last vertex in the order is colored
    position = {v: i for i, v in enumerate(order)}
    closing = [[] for _ in range(H.n)]
    for edge in H.edges:
        closing[max(edge, key=position.__getitem__)].append(edge)
    colors = [-1] * H.n

    def place(i, used):
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            colors[v] = c
            if all(any(colors[u] != c for u in edge) for edge in closing[v]):
                if place(i + 1, max(used, c + 1)):
                    return True
        colors[v] = -1
        return False

    return list(colors) if place(0, 0) else None


def optimal_hyper_coloring(H):
    """(χ, coloring); a singleton edge gives (INFINITE, None)."""
    if H.n > config.vertex_cap:
        raise CapExceeded("vertex_cap", config.vertex_cap, H.n)
    if H.n == 0:
        return 0, []
    if any(len(edge) == 1 for edge in H.edges):
        return INFINITE, None
    if not H.edges:
        return 1, [0] * H.n
    order = sorted(range(H.n), key=lambda v: (-len(H.incidence[v]), v))
    for k in range(2, H.n + 1):
        coloring = _try_hyper_color(H, order, k)
        if coloring is not None:
            return k, coloring
    # one color per vertex always works without singleton edges
    return H.n, list(range(H.n))


def hyper_chromatic_number(H):
    return optimal_hyper_coloring(H)[0]


# ─────────────────────────────────────────────
# Zhu product
# ─────────────────────────────────────────────

def zhu_product(H1, H2):
    """Vertex (u, v) has id u·n2 + v; an edge is a set of pairs projecting onto an edge of each factor.

    Edges larger than zhu_size_cap are left out. Every minimal edge over
    (e1, e2) has at most |e1| + |e2| − 1 pairs, so the chromatic number is
    unaffected as long as that stays within the cap.
    """
    cap = config.zhu_size_cap
    m = H2.n
    edges = set()
    for e1 in H1.edges:
        for e2 in H2.edges:
            a, b = len(e1), len(e2)
            if a + b - 1 > cap:
                raise CapExceeded("zhu_size_cap", cap, a + b - 1)
            grid = [(u, v) for u in sorted(e1) for v in sorted(e2)]
            for s in range(max(a, b), min(a * b, cap) + 1):
                for chosen in itertools.combinations(grid, s):
                    if {u for u, _ in chosen} == e1 and {v for _, v in chosen} == e2:
                        edges.add(frozenset(u * m + v for u, v in chosen))
                if len(edges) > config.zhu_edge_cap:
                    raise CapExceeded("zhu_edge_cap", config.zhu_edge_cap, len(edges))
    log_debug(f"zhu product: {H1.n * m} vertices, {len(edges)} edges")
    return Hypergraph(H1.n * m, frozenset(edges))


def zhu_contains(H1, H2, S):
    """Is the set of pairs S an edge of the Zhu product?"""
    S = list(S)
    if not S:
        return False
    return (frozenset(u for u, _ in S) in H1.edges
            and frozenset(v for _, v in S) in H2.edges)


def verify_zhu_conjecture(H1, H2):
    """χ(H1 × H2) against min(χ(H1), χ(H2)); returns (χ of the product, the minimum, equal)."""
    chi = hyper_chromatic_number(zhu_product(H1, H2))
    expected = min(hyper_chromatic_number(H1), hyper_chromatic_number(H2))
    return chi, expected, chi == expected


# ─────────────────────────────────────────────
# Edge complex
# ─────────────────────────────────────────────

def _maximal_families(H, r):
    """Maximal (U_1, ..., U_r), pairwise disjoint, with every selection an edge of H."""
    vertices = sorted(set().union(*H.edges))
    start = {tuple(frozenset((x,)) for x in t)
             for edge in H.edges for t in itertools.permutations(sorted(edge))}
    seen = set(start)
    stack = list(start)
    maximal = []
    while stack:
        parts = stack.pop()
        used = set().union(*parts)
        grown = False
        for i in range(r):
            others = parts[:i] + parts[i + 1:]
            for w in vertices:
                if w in used:
                    continue
                if not all(frozenset(sel) | {w} in H.edges for sel in itertools.product(*others)):
                    continue
                grown = True
                bigger = parts[:i] + (parts[i] | {w},) + parts[i + 1:]
                if bigger not in seen:
                    seen.add(bigger)
                    stack.append(bigger)
                    if len(seen) > config.face_cap:
                        raise CapExceeded("face_cap", config.face_cap, len(seen))
        if not grown:
            maximal.append(parts)
    return maximal


def b_edge_complex(H, r, max_dim=None):
    """B_edge(H) on ordered r-tuples of edges, acted on by the cyclic shift (x2, ..., xr, x1)."""
    if not is_prime(r):
        raise NotAPrime(f"r = {r} is not prime")
    if not H.edges:
        raise EmptyComplex("edge complex of a hypergraph without edges is empty")
    if not H.is_uniform(r):
        bad = next(edge for edge in H.edges if len(edge) != r)
        raise NotUniform(f"edge {sorted(bad)} does not have {r} vertices", witness=sorted(bad))
    tuples = sorted(t for edge in H.edges for t in itertools.permutations(sorted(edge)))
    vertex_of = {t: i for i, t in enumerate(tuples)}
    maximal = []
    for parts in _maximal_families(H, r):
        for i, j in itertools.combinations(range(r), 2):
            if parts[i] & parts[j]:
                raise InvalidComplex(f"projections {i} and {j} overlap", witness=[sorted(x) for x in parts])
        maximal.append([vertex_of[t] for t in itertools.product(*(sorted(x) for x in parts))])
    K = from_maximal_faces(tuples, maximal, max_dim=max_dim)
    generator = tuple(vertex_of[t[1:] + t[:1]] for t in tuples)
    log_debug(f"edge complex: {len(tuples)} vertices, {len(maximal)} maximal faces, f={K.f_vector()}")
    return validate_action(K, generator, r)


# ─────────────────────────────────────────────
# Free Z/p-posets
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class PosetAction:
    poset: GPoset
    p: int
    generator: tuple

    @cached_property
    def powers(self):
        out = [tuple(range(self.poset.element_count))]
        for _ in range(1, self.p):
            out.append(tuple(self.generator[x] for x in out[-1]))
        return out

    def orbits(self):
        seen = set()
        out = []
        for x in range(self.poset.element_count):
            if x not in seen:
                orbit = tuple(self.powers[k][x] for k in range(self.p))
                seen.update(orbit)
                out.append(orbit)
        return out


def validate_poset_action(P, perm, p):
    """perm must be an order-preserving permutation of order p without fixed points of g^k."""
    if not is_prime(p):
        raise NotAPrime(f"group order {p} is not prime")
    perm = tuple(int(x) for x in perm)
    n = P.element_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise InvalidPoset(f"generator is not a permutation of the {n} elements")
    for a, b in P.less_than:
        if not P.less(perm[a], perm[b]):
            raise InvalidPoset(f"generator does not preserve {a} < {b}", witness=(a, b))
    if perm == tuple(range(n)):
        raise WrongOrder("generator is the identity")
    action = PosetAction(P, p, perm)
    if tuple(perm[x] for x in action.powers[p - 1]) != tuple(range(n)):
        raise WrongOrder(f"generator does not have order {p}")
    for k in range(1, p):
        fixed = next((x for x in range(n) if action.powers[k][x] == x), None)
        if fixed is not None:
            raise NotFree(f"g^{k} fixes element {fixed}", witness=(fixed, k))
    return action


def face_poset_action(a):
    return validate_poset_action(face_poset(a.complex), face_permutation(a), a.p)


def poset_action_product(P, Q):
    """Componentwise action on P × Q; element (x, y) has id x·|Q| + y."""
    if P.p != Q.p:
        raise PMismatch(f"cannot multiply a Z/{P.p} poset with a Z/{Q.p} poset")
    m = Q.poset.element_count
    generator = tuple(P.generator[x // m] * m + Q.generator[x % m]
                      for x in range(P.poset.element_count * m))
    return PosetAction(poset_product(P.poset, Q.poset), P.p, generator)


def order_complex_action(P, max_dim=None):
    return validate_action(order_complex(P.poset, max_dim=max_dim), P.generator, P.p)


def _compatible(P, x, y):
    return any(P.poset.comparable(x, P.powers[k][y]) for k in range(1, P.p))


def compatibility_hypergraph(P, r):
    """r-subsets whose members are pairwise comparable up to a nontrivial translate."""
    if not 2 <= r <= P.p:
        raise BadR(f"r must lie in [2, {P.p}], got {r}")
    n = P.poset.element_count
    G = nx.Graph()
    G.add_nodes_from(range(n))
    G.add_edges_from((x, y) for x, y in itertools.combinations(range(n), 2) if _compatible(P, x, y))
    edges = []
    for clique in nx.enumerate_all_cliques(G):
        if len(clique) > r:
            break
        if len(clique) == r:
            edges.append(clique)
            if len(edges) > config.face_cap:
                raise CapExceeded("face_cap", config.face_cap, len(edges))
    return Hypergraph.from_edges(n, edges)


# ─────────────────────────────────────────────
# Coloring to equivariant map
# ─────────────────────────────────────────────

@dataclass
class EquivariantMapReport:
    map: SimplicialMap
    slots: int
    representatives: list
    simplicial: bool
    equivariant: bool
    orbit_colors_ok: bool
    hind_order_complex: int
    bound: int

    @property
    def passed(self):
        return (self.simplicial and self.equivariant and self.orbit_colors_ok
                and self.hind_order_complex <= self.bound)


def coloring_to_equivariant_map(P, c, r):
    """Turn a proper coloring of C_P^(r) into an equivariant map Δ(P) → (σ^(r−2))^{*m}.

    Each orbit is represented by its element of minimum color x'; g·x' goes to
    vertex g of copy c(x'), that is, to target vertex c(x')·p + g.
    """
    C = compatibility_hypergraph(P, r)
    c = [int(x) for x in c]
    if len(c) != C.n:
        raise NotProperColoring(f"coloring has {len(c)} entries for {C.n} elements")
    bad = next((edge for edge in C.edges if len({c[v] for v in edge}) < 2), None)
    if bad is not None:
        raise NotProperColoring(f"edge {sorted(bad)} is monochromatic", witness=sorted(bad))
    p = P.p
    per_orbit = _ceil_div(p, r - 1)
    m = max(c) + 1 - per_orbit + 1

    vertex_map = [None] * C.n
    representatives = []
    orbit_colors_ok = True
    for orbit in P.orbits():
        rep = min(orbit, key=lambda y: (c[y], y))
        representatives.append(rep)
        if len({c[y] for y in orbit}) < per_orbit:
            orbit_colors_ok = False
        for k in range(p):
            vertex_map[P.powers[k][rep]] = c[rep] * p + k
    if not orbit_colors_ok or m < 1:
        raise NotProperColoring(f"some orbit uses fewer than {per_orbit} colors")

    piece = skeleton(simplex(p - 1), r - 2)
    target = piece
    for _ in range(m - 1):
        target = join(target, piece)
    target_generator = tuple((v // p) * p + (v % p + 1) % p for v in range(target.vertex_count))

    delta = order_complex(P.poset)
    f = SimplicialMap(delta, target, tuple(vertex_map))
    simplicial = is_simplicial_map(f)
    equivariant = all(vertex_map[P.generator[x]] == target_generator[vertex_map[x]] for x in range(C.n))
    value = hind(validate_action(delta, P.generator, p)).hind
    report = EquivariantMapReport(f, m, representatives, simplicial, equivariant, orbit_colors_ok,
                                  value, m * (r - 1) - 1)
    log_debug(f"coloring map: m={m}, hind Δ(P)={value}, bound={report.bound}")
    return report


# ─────────────────────────────────────────────
# Lower bounds
# ─────────────────────────────────────────────

def poset_coloring_bound(P, r):
    """⌈(hind Δ(P) + 1)/(r − 1)⌉ + ⌈p/(r − 1)⌉ − 1 ≤ χ(C_P^(r))."""
    if not 2 <= r <= P.p:
        raise BadR(f"r must lie in [2, {P.p}], got {r}")
    value = hind(order_complex_action(P)).hind
    return _ceil_div(value + 1, r - 1) + _ceil_div(P.p, r - 1) - 1


def afl_bound(H, p):
    """1 + ⌈(hind B_edge(H) + 1)/(p − 1)⌉ ≤ χ(H)."""
    value = hind(b_edge_complex(H, p)).hind
    return 1 + _ceil_div(value + 1, p - 1)


def is_afl_tight(H, p):
    return hyper_chromatic_number(H) == afl_bound(H, p)


@dataclass
class HomomorphismReport:
    psi: tuple
    compatibility: Hypergraph
    failures: list = field(default_factory=list)

    @property
    def verified(self):
        return not self.failures


def edge_complex_homomorphism(H, r):
    """ψ: C^(r) of the face poset of B_edge(H) → H, sending a simplex T to min π₁(T)."""
    B = b_edge_complex(H, r)
    P = face_poset_action(B)
    C = compatibility_hypergraph(P, r)
    labels = B.complex.labels
    psi = tuple(min(labels[v][0] for v in face) for face in P.poset.labels)
    failures = [sorted(edge) for edge in C.edges
                if frozenset(psi[x] for x in edge) not in H.edges]
    log_debug(f"edge-complex homomorphism: {len(C.edges)} edges, {len(failures)} failures")
    return HomomorphismReport(psi, C, failures)


def product_compatibility_inclusion(P, Q, r):
    """Every edge of C^(r) of P × Q is an edge of the Zhu product of C_P^(r) and C_Q^(r)."""
    if P.p != Q.p:
        raise PMismatch(f"cannot compare a Z/{P.p} poset with a Z/{Q.p} poset")
    CP, CQ = compatibility_hypergraph(P, r), compatibility_hypergraph(Q, r)
    product = compatibility_hypergraph(poset_action_product(P, Q), r)
    m = Q.poset.element_count
    if product.n != CP.n * CQ.n:
        return False
    for edge in product.edges:
        if not zhu_contains(CP, CQ, [divmod(x, m) for x in edge]):
            log_debug(f"edge {sorted(edge)} of the product poset is not a Zhu edge")
            return False
    return True


@dataclass(frozen=True)
class ConditionFailed:
    m: int
    fallback: int


def product_chromatic_bound(H1, H2, p):
    """Lower bound for χ(H1 × H2) from m = min(hind B_edge(H1), hind B_edge(H2)).

    Certified when m is odd or p − 1 does not divide m; otherwise the product
    index is only known to be ≥ m − 1 and ConditionFailed carries that bound.
    """
    m = min(hind(b_edge_complex(H1, p)).hind, hind(b_edge_complex(H2, p)).hind)
    if m % 2 == 1 or m % (p - 1) != 0:
        return 1 + _ceil_div(m + 1, p - 1)
    return ConditionFailed(m, 1 + _ceil_div(m, p - 1))


def certified_product_bound(H1, H2, p, certificates):
    """1 + ⌈(k + 1)/(p − 1)⌉ with k the smaller certified co-index of B_edge(H1), B_edge(H2)."""
    if len(certificates) != 2:
        raise BadCertificate(f"expected one certificate per factor, got {len(certificates)}")
    dims = []
    for H, f in zip((H1, H2), certificates):
        B = b_edge_complex(H, p)
        try:
            ok = coindex_certificate_check(B, f)
        except TargetMismatch as e:
            raise BadCertificate(str(e)) from e
        if not ok:
            raise BadCertificate("certificate is not an equivariant simplicial map")
        dims.append(f.source.dim)
    return 1 + _ceil_div(min(dims) + 1, p - 1)

