# helpers/actions.py
#
# Free Z/p actions on simplicial complexes, given by a vertex permutation.
#
# Freeness is the strong, vertex-disjoint clause: g^k·σ ∩ σ = ∅ for every face σ
# and 1 ≤ k < p. Under it the quotient X/G is modelled by OrbitCells, an ordered
# Δ-complex whose cells are face orbits. With quotient_model = "simplicial" the
# action must in addition have a simplicial quotient (distinct face orbits have
# distinct vertex sets); regularize subdivides until it does. ProductCells is
# the matching cell model of (X × Y)/G for the diagonal action.

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import config
from helpers.complexes import (
    SComplex,
    barycentric_subdivision,
    cross_polytope_boundary,
    disjoint_union,
    face_id,
    face_offsets,
    from_maximal_faces,
    is_simplicial_map,
    join,
    skeleton,
    walker_product,
)
from helpers.errors import BadParams, CapExceeded, NotAPrime, NotFree, NotSimplicial, PMismatch, StillIrregular, WrongOrder
from helpers.fpalg import is_prime
from helpers.log_utils import log_debug


@dataclass(frozen=True)
class FreeAction:
    complex: SComplex
    p: int
    generator: tuple

    @cached_property
    def powers(self):
        """powers[k][v] = g^k·v for 0 ≤ k < p."""
        out = [tuple(range(self.complex.vertex_count))]
        for _ in range(1, self.p):
            out.append(tuple(self.generator[v] for v in out[-1]))
        return out

    @property
    def dim(self):
        return self.complex.dim

    def translate(self, face, k=1):
        gk = self.powers[k % self.p]
        return tuple(sorted(gk[v] for v in face))


def power(a, k):
    return a.powers[k % a.p]


def orbits(a):
    """Vertex orbits, each as (section, g·section, g²·section, ...), ordered by section."""
    seen = set()
    out = []
    for v in range(a.complex.vertex_count):
        if v in seen:
            continue
        orbit = tuple(a.powers[k][v] for k in range(a.p))
        seen.update(orbit)
        out.append(orbit)
    return out


# ─────────────────────────────────────────────
# Validation
# ─────────────────────────────────────────────

def _first_overlap(a, faces):
    """(face, k) with g^k·face meeting face, or None."""
    for face in faces:
        members = set(face)
        for k in range(1, a.p):
            gk = a.powers[k]
            if any(gk[v] in members for v in face):
                return face, k
    return None


def is_strongly_free(a):
    return _first_overlap(a, a.complex.maximal_faces()) is None


def has_simplicial_quotient(a):
    """Distinct face orbits project to distinct vertex sets in every dimension."""
    orbit_of = {}
    for i, orbit in enumerate(orbits(a)):
        for v in orbit:
            orbit_of[v] = i
    for d in range(a.complex.dim + 1):
        projected = {frozenset(orbit_of[v] for v in face) for face in a.complex.faces(d)}
        if any(len(q) != d + 1 for q in projected):
            return False
        if a.p * len(projected) != a.complex.face_count(d):
            return False
    return True


def validate_action(K, perm, p, strict=True):
    """Check that perm generates a simplicial Z/p action; strict also demands strong freeness."""
    if not is_prime(p):
        raise NotAPrime(f"group order {p} is not prime")
    perm = tuple(int(v) for v in perm)
    n = K.vertex_count
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise NotSimplicial(f"generator is not a permutation of the {n} vertices")
    for face in K.maximal_faces():
        if not K.has_face({perm[v] for v in face}):
            raise NotSimplicial(f"generator maps face {face} to a non-face", witness=face)

    if perm == tuple(range(n)):
        raise WrongOrder("generator is the identity")
    current = perm
    for _ in range(p - 1):
        current = tuple(perm[v] for v in current)
    if current != tuple(range(n)):
        raise WrongOrder(f"generator does not have order {p}")

    action = FreeAction(K, p, perm)
    if strict:
        overlap = _first_overlap(action, K.maximal_faces())
        if overlap is not None:
            face, k = overlap
            raise NotFree(f"g^{k} maps face {face} onto a face sharing a vertex with it", witness=(face, k))
    return action


def regularize(a, rounds=None, model=None):
    """Subdivide until the action is strongly free (and, in simplicial mode, has a simplicial quotient)."""
    rounds = config.regularize_rounds if rounds is None else rounds
    model = config.quotient_model if model is None else model

    def regular(action):
        if not is_strongly_free(action):
            return False
        return model == "orbit" or has_simplicial_quotient(action)

    current = a
    for attempt in range(rounds + 1):
        if regular(current):
            if attempt:
                log_debug(f"regularized after {attempt} subdivision(s): f={current.complex.f_vector()}")
            return current
        if attempt == rounds:
            break
        current = subdivision_action(current)

    overlap = _first_overlap(current, current.complex.maximal_faces())
    witness = overlap[0] if overlap else None
    raise StillIrregular(f"action still irregular after {rounds} subdivisions", witness=witness)


# ─────────────────────────────────────────────
# Quotients
# ─────────────────────────────────────────────

class OrbitCells:
    """Ordered Δ-complex model of X/G.

    A d-cell is a face orbit, stored as the representative X-face whose vertices
    are listed in orbit-id order and whose first vertex is a section vertex.
    """

    def __init__(self, a, section_orbits):
        self.action = a
        self.orbit_of = {}
        self.exponent = {}
        self.lift = []
        for i, orbit in enumerate(section_orbits):
            self.lift.append(orbit)
            for e, v in enumerate(orbit):
                self.orbit_of[v] = i
                self.exponent[v] = e
        self.dim = a.complex.dim
        self._faces = []
        for d in range(self.dim + 1):
            cells = {self.normalize(tuple(sorted(face, key=self.orbit_of.__getitem__)))
                     for face in a.complex.faces(d)}
            self._faces.append(sorted(cells, key=lambda t: (self.orbit_tuple(t), t)))
        self._index = [{cell: i for i, cell in enumerate(cells)} for cells in self._faces]

    def normalize(self, cell):
        shift = self.exponent[cell[0]]
        if shift == 0:
            return cell
        back = self.action.powers[(-shift) % self.action.p]
        return tuple(back[v] for v in cell)

    def faces(self, d):
        if d < 0 or d > self.dim:
            return []
        return self._faces[d]

    def index(self, d):
        if d < 0 or d > self.dim:
            return {}
        return self._index[d]

    def face_count(self, d):
        return len(self.faces(d))

    def f_vector(self):
        return [len(cells) for cells in self._faces]

    def orbit_tuple(self, cell):
        return tuple(self.orbit_of[v] for v in cell)

    def lift_cell(self, cell, k):
        """The translate g^k of the representative face, as a sorted X-face."""
        return self.action.translate(cell, k)


@dataclass
class QuotientData:
    action: FreeAction
    quotient: OrbitCells      # X/G as a Δ-complex; face_count(d) · p = |faces_d(X)|
    projection: tuple         # X-vertex → orbit id
    section: tuple            # orbit id → chosen lift vertex
    is_simplicial: bool = field(default=False)

    def simplicial_complex(self):
        """X/G as an SComplex on the orbit ids; only defined when distinct cells have distinct vertex sets."""
        if not self.is_simplicial:
            raise StillIrregular("quotient has cells sharing a vertex set; subdivide in simplicial mode first")
        K = self.action.complex
        image = {tuple(sorted(self.projection[v] for v in face)) for face in K.all_faces()}
        return SComplex([K.labels[s] for s in self.section], image)


def quotient(a):
    """Quotient by a strongly free action; section = smallest vertex of each orbit."""
    if not is_strongly_free(a):
        face, k = _first_overlap(a, a.complex.maximal_faces())
        raise NotFree(f"g^{k} maps face {face} onto a face sharing a vertex with it", witness=(face, k))
    orbit_list = orbits(a)
    cells = OrbitCells(a, orbit_list)
    for d in range(a.complex.dim + 1):
        if a.complex.face_count(d) != a.p * cells.face_count(d):
            raise NotFree(f"{a.complex.face_count(d)} faces of dimension {d} do not split into "
                          f"{cells.face_count(d)} orbits of size {a.p}", witness=d)
    projection = tuple(cells.orbit_of[v] for v in range(a.complex.vertex_count))
    section = tuple(orbit[0] for orbit in orbit_list)
    simplicial = has_simplicial_quotient(a)
    log_debug(f"quotient: cells f={cells.f_vector()}, simplicial={simplicial}")
    return QuotientData(a, cells, projection, section, simplicial)


class ProductCells:
    """Cellular model of (X × Y)/G for the diagonal action.

    A cell of bidegree (i, j) is the orbit of σ × τ, stored as (σ, τ) with σ an
    i-cell of X/G and τ any j-face of Y listed in Y's orbit order. Both orders
    are G-invariant, so moving a cell back to its representative keeps its sign.
    """

    def __init__(self, qx, qy, max_dim=None):
        ax, ay = qx.action, qy.action
        if ax.p != ay.p:
            raise PMismatch(f"cannot multiply a Z/{ax.p} action with a Z/{ay.p} action")
        self.x = qx.quotient
        self.p = ax.p
        self._y_powers = ay.powers
        top = ax.complex.dim + ay.complex.dim
        self.dim = top if max_dim is None else min(max_dim, top)
        y_order = qy.quotient.orbit_of.__getitem__
        y_faces = [[tuple(sorted(face, key=y_order)) for face in ay.complex.faces(j)]
                   for j in range(ay.complex.dim + 1)]
        self._faces = []
        for d in range(self.dim + 1):
            low, high = max(0, d - ay.complex.dim), min(d, ax.complex.dim)
            self._faces.append([(sigma, tau) for i in range(low, high + 1)
                                for sigma in self.x.faces(i) for tau in y_faces[d - i]])
        total = sum(len(cells) for cells in self._faces)
        if total > config.face_cap:
            raise CapExceeded(f"product cell model has {total} cells, above face_cap={config.face_cap}",
                              witness=total)
        self._index = [{cell: n for n, cell in enumerate(cells)} for cells in self._faces]

    def normalize(self, cell):
        sigma, tau = cell
        shift = self.x.exponent[sigma[0]]
        if shift == 0:
            return cell
        back = self._y_powers[(-shift) % self.p]
        return self.x.normalize(sigma), tuple(back[v] for v in tau)

    def facets(self, cell):
        """(facet, sign) pairs of ∂(σ × τ) = ∂σ × τ + (−1)^dim σ · σ × ∂τ."""
        sigma, tau = cell
        i = len(sigma) - 1
        out = []
        if i >= 1:
            for k in range(i + 1):
                out.append((self.normalize((sigma[:k] + sigma[k + 1:], tau)), -1 if k % 2 else 1))
        if len(tau) >= 2:
            sign = -1 if i % 2 else 1
            for k in range(len(tau)):
                out.append(((sigma, tau[:k] + tau[k + 1:]), sign if k % 2 == 0 else -sign))
        return out

    def faces(self, d):
        if d < 0 or d > self.dim:
            return []
        return self._faces[d]

    def index(self, d):
        if d < 0 or d > self.dim:
            return {}
        return self._index[d]

    def face_count(self, d):
        return len(self.faces(d))

    def f_vector(self):
        return [len(cells) for cells in self._faces]


def product_quotient(a, b, max_dim=None):
    """ProductCells of two actions, each regularized in orbit mode first."""
    a, b = regularize(a, model="orbit"), regularize(b, model="orbit")
    return ProductCells(quotient(a), quotient(b), max_dim=max_dim)


# ─────────────────────────────────────────────
# Builders
# ─────────────────────────────────────────────

def e_k_g(p, k):
    """(k+1)-fold join of the p-point complex; vertex f·p + g is group element g in factor f."""
    if not is_prime(p):
        raise NotAPrime(f"group order {p} is not prime")
    if k < 0:
        raise BadParams(f"E_kG needs k ≥ 0, got {k}")
    labels = [(f, g) for f in range(k + 1) for g in range(p)]
    maximal = [tuple(f * p + g for f, g in enumerate(choice))
               for choice in itertools.product(range(p), repeat=k + 1)]
    generator = tuple(f * p + (g + 1) % p for f in range(k + 1) for g in range(p))
    return FreeAction(from_maximal_faces(labels, maximal), p, generator)


def sphere_action(n):
    """Boundary of the (n+1)-cross-polytope with the antipodal swap 2i ↔ 2i+1."""
    if n < 0:
        raise BadParams(f"sphere dimension must be ≥ 0, got {n}")
    K = cross_polytope_boundary(n + 1)
    generator = tuple(v ^ 1 for v in range(K.vertex_count))
    return FreeAction(K, 2, generator)


def join_action(a, b):
    if a.p != b.p:
        raise PMismatch(f"cannot join a Z/{a.p} action with a Z/{b.p} action")
    shift = a.complex.vertex_count
    generator = a.generator + tuple(v + shift for v in b.generator)
    return FreeAction(join(a.complex, b.complex), a.p, generator)


def disjoint_union_action(a, b):
    if a.p != b.p:
        raise PMismatch(f"cannot combine a Z/{a.p} action with a Z/{b.p} action")
    shift = a.complex.vertex_count
    generator = a.generator + tuple(v + shift for v in b.generator)
    return FreeAction(disjoint_union(a.complex, b.complex), a.p, generator)


def skeleton_action(a, d):
    return FreeAction(skeleton(a.complex, d), a.p, a.generator)


def face_permutation(a):
    """Induced permutation of all faces in (dim, lex) id order."""
    K = a.complex
    offsets = face_offsets(K)
    return tuple(face_id(K, a.translate(face), offsets) for face in K.all_faces())


def subdivision_action(a):
    return FreeAction(barycentric_subdivision(a.complex), a.p, face_permutation(a))


def product_action(a, b, max_dim=None):
    """Diagonal action on the Walker triangulation of |K_a| × |K_b|."""
    if a.p != b.p:
        raise PMismatch(f"cannot multiply a Z/{a.p} action with a Z/{b.p} action")
    ga, gb = face_permutation(a), face_permutation(b)
    m = len(gb)
    K = walker_product(a.complex, b.complex, max_dim=max_dim)
    generator = tuple(ga[x // m] * m + gb[x % m] for x in range(K.vertex_count))
    return regularize(FreeAction(K, a.p, generator))


# ─────────────────────────────────────────────
# Maps between actions
# ─────────────────────────────────────────────

def is_equivariant_map(f, a, b):
    """f: a.complex → b.complex simplicial with f(g·v) = g·f(v)."""
    if a.p != b.p or f.source != a.complex or f.target != b.complex:
        return False
    if not is_simplicial_map(f):
        return False
    return all(f.vertex_map[a.generator[v]] == b.generator[f.vertex_map[v]]
               for v in range(a.complex.vertex_count))


def actions_isomorphic(a, b):
    """Backtracking search for an equivariant vertex bijection that is a complex isomorphism."""
    if a.p != b.p or a.complex.f_vector() != b.complex.f_vector():
        return False
    orbits_a = orbits(a)
    orbits_b = orbits(b)
    if len(orbits_a) != len(orbits_b):
        return False

    order_of = {}
    for i, orbit in enumerate(orbits_a):
        for v in orbit:
            order_of[v] = i
    # faces to check once the last orbit they touch is placed
    due = [[] for _ in orbits_a]
    for face in a.complex.maximal_faces():
        due[max(order_of[v] for v in face)].append(face)

    phi = {}
    used = set()

    def place(i):
        if i == len(orbits_a):
            return True
        for target_orbit, target in enumerate(orbits_b):
            if target_orbit in used:
                continue
            for start in target:
                for k, v in enumerate(orbits_a[i]):
                    phi[v] = b.powers[k][start]
                if all(b.complex.has_face({phi[v] for v in face}) for face in due[i]):
                    used.add(target_orbit)
                    if place(i + 1):
                        return True
                    used.discard(target_orbit)
        for v in orbits_a[i]:
            phi.pop(v, None)
        return False

    return place(0)
