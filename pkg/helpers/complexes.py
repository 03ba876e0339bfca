# helpers/complexes.py
#
# Finite abstract simplicial complexes and posets.
#
# Every face is a sorted tuple of vertex indices; the vertex index order is the
# single global orientation convention used by the cochain code. Faces are
# enumerated in full (not only maximal faces) and stored per dimension in
# lexicographic order, so a face's position inside its dimension is stable.

import itertools
from dataclasses import dataclass

import config
from helpers.errors import CapExceeded, EmptyComplex, InvalidComplex, InvalidPoset
from helpers.log_utils import log_debug


def _check_dim(d):
    if d > config.dim_cap:
        raise CapExceeded("dim_cap", config.dim_cap, d)


def _check_faces(count):
    if count > config.face_cap:
        raise CapExceeded("face_cap", config.face_cap, count)


# ─────────────────────────────────────────────
# Simplicial complexes
# ─────────────────────────────────────────────

class SComplex:
    """Downward-closed family of nonempty vertex subsets on vertices 0..n-1.

    Equality compares the face family only; labels are carried along for
    reporting and never take part in any computation.
    """

    def __init__(self, labels, faces):
        labels = list(labels)
        if not labels:
            raise EmptyComplex("complex has no vertices")
        n = len(labels)
        by_dim = {}
        for face in faces:
            face = tuple(sorted(face))
            if not face:
                raise InvalidComplex("empty face")
            if face[0] < 0 or face[-1] >= n:
                raise InvalidComplex(f"face {face} uses a vertex outside 0..{n - 1}", witness=face)
            if len(set(face)) != len(face):
                raise InvalidComplex(f"face {face} repeats a vertex", witness=face)
            by_dim.setdefault(len(face) - 1, set()).add(face)
        # Every label is a vertex, isolated or not.
        by_dim.setdefault(0, set()).update((v,) for v in range(n))

        self.labels = labels
        self.vertex_count = n
        self.dim = max(by_dim)
        _check_dim(self.dim)
        self._faces = [sorted(by_dim.get(d, ())) for d in range(self.dim + 1)]
        self._index = [{face: i for i, face in enumerate(fs)} for fs in self._faces]
        _check_faces(sum(len(fs) for fs in self._faces))
        self._check_closed()

    def _check_closed(self):
        for d in range(1, self.dim + 1):
            below = self._index[d - 1]
            for face in self._faces[d]:
                for i in range(d + 1):
                    facet = face[:i] + face[i + 1:]
                    if facet not in below:
                        raise InvalidComplex(f"face {face} is missing its facet {facet}", witness=face)

    # ── cell-model protocol (shared with the orbit model of quotients) ──

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

    def normalize(self, cell):
        return cell

    # ── queries ──

    def f_vector(self):
        return [len(fs) for fs in self._faces]

    def all_faces(self):
        for fs in self._faces:
            yield from fs

    def has_face(self, face):
        face = tuple(sorted(face))
        return 0 < len(face) <= self.dim + 1 and face in self._index[len(face) - 1]

    def maximal_faces(self):
        covered = set()
        for d in range(1, self.dim + 1):
            for face in self._faces[d]:
                for i in range(d + 1):
                    covered.add(face[:i] + face[i + 1:])
        return [face for face in self.all_faces() if face not in covered]

    def __eq__(self, other):
        return (isinstance(other, SComplex) and self.vertex_count == other.vertex_count
                and self._faces == other._faces)

    def __hash__(self):
        return hash((self.vertex_count, tuple(len(fs) for fs in self._faces)))

    def __repr__(self):
        return f"SComplex(n={self.vertex_count}, dim={self.dim}, f={self.f_vector()})"


def from_maximal_faces(labels, maximal, max_dim=None):
    """Downward closure of the given faces, optionally only up to dimension max_dim."""
    labels = list(labels)
    maximal = [tuple(sorted(set(face))) for face in maximal]
    if not maximal:
        raise EmptyComplex("no faces given")
    faces = set()
    for face in maximal:
        if not face:
            raise InvalidComplex("empty face")
        top = len(face) if max_dim is None else min(len(face), max_dim + 1)
        _check_dim(top - 1)
        for size in range(1, top + 1):
            faces.update(itertools.combinations(face, size))
        _check_faces(len(faces))
    return SComplex(labels, faces)


def simplex(n):
    """The full n-simplex on n+1 vertices."""
    return from_maximal_faces(range(n + 1), [tuple(range(n + 1))])


def cross_polytope_boundary(n):
    """Boundary of the n-dimensional cross-polytope: vertex 2i is +e_i, 2i+1 is −e_i."""
    if n < 1:
        raise EmptyComplex("cross-polytope boundary needs n ≥ 1")
    labels = [f"{'+-'[s]}e{i}" for i in range(n) for s in (0, 1)]
    maximal = [tuple(2 * i + s for i, s in enumerate(signs))
               for signs in itertools.product((0, 1), repeat=n)]
    return from_maximal_faces(labels, maximal)


def join(K, L):
    """K-vertices first, then L-vertices shifted by |V(K)|."""
    _check_dim(K.dim + L.dim + 1)
    total = 1
    for complex_ in (K, L):
        total *= sum(complex_.f_vector()) + 1
    _check_faces(total - 1)
    shift = K.vertex_count
    k_faces = [()] + list(K.all_faces())
    l_faces = [()] + [tuple(v + shift for v in face) for face in L.all_faces()]
    faces = [a + b for a in k_faces for b in l_faces if a or b]
    labels = [("K", lab) for lab in K.labels] + [("L", lab) for lab in L.labels]
    return SComplex(labels, faces)


def disjoint_union(K, L):
    shift = K.vertex_count
    faces = list(K.all_faces()) + [tuple(v + shift for v in face) for face in L.all_faces()]
    labels = [("K", lab) for lab in K.labels] + [("L", lab) for lab in L.labels]
    return SComplex(labels, faces)


def skeleton(K, d):
    if d < 0:
        raise InvalidComplex(f"skeleton dimension must be ≥ 0, got {d}")
    faces = [face for e in range(min(d, K.dim) + 1) for face in K.faces(e)]
    return SComplex(K.labels, faces)


def euler_characteristic(K):
    return sum((-1) ** d * count for d, count in enumerate(K.f_vector()))


def face_offsets(K):
    """Start of each dimension in the (dim, lex) enumeration of all faces."""
    offsets = [0]
    for count in K.f_vector():
        offsets.append(offsets[-1] + count)
    return offsets


def face_id(K, face, offsets=None):
    offsets = offsets or face_offsets(K)
    d = len(face) - 1
    return offsets[d] + K.index(d)[face]


# ─────────────────────────────────────────────
# Posets
# ─────────────────────────────────────────────

class GPoset:
    """Finite strict partial order on elements 0..n-1."""

    def __init__(self, labels, less_than):
        self.labels = list(labels)
        n = len(self.labels)
        self.element_count = n
        self.less_than = frozenset((int(a), int(b)) for a, b in less_than)
        self.up = [set() for _ in range(n)]
        self.down = [set() for _ in range(n)]
        for a, b in self.less_than:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidPoset(f"relation ({a}, {b}) outside 0..{n - 1}", witness=(a, b))
            if a == b:
                raise InvalidPoset(f"relation ({a}, {a}) is reflexive", witness=(a, b))
            self.up[a].add(b)
            self.down[b].add(a)
        for a, b in self.less_than:
            if (b, a) in self.less_than:
                raise InvalidPoset(f"{a} and {b} are below each other", witness=(a, b))
            if not self.up[b] <= self.up[a]:
                raise InvalidPoset(f"relation is not transitive at ({a}, {b})", witness=(a, b))

    @classmethod
    def from_covers(cls, labels, covers):
        """Transitive closure of the given cover pairs; a cycle raises InvalidPoset."""
        labels = list(labels)
        n = len(labels)
        succ = [set() for _ in range(n)]
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise InvalidPoset(f"cover ({a}, {b}) outside 0..{n - 1}", witness=(a, b))
            succ[a].add(b)
        less_than = set()
        for start in range(n):
            stack = list(succ[start])
            seen = set()
            while stack:
                x = stack.pop()
                if x in seen:
                    continue
                seen.add(x)
                stack.extend(succ[x])
            if start in seen:
                raise InvalidPoset(f"covers contain a cycle through {start}", witness=start)
            less_than.update((start, x) for x in seen)
        return cls(labels, less_than)

    def less(self, a, b):
        return b in self.up[a]

    def leq(self, a, b):
        return a == b or b in self.up[a]

    def comparable(self, a, b):
        return self.leq(a, b) or self.leq(b, a)

    def cover_relations(self):
        return sorted((a, b) for a, b in self.less_than
                      if not any(b in self.up[c] for c in self.up[a]))

    def __eq__(self, other):
        return (isinstance(other, GPoset) and self.element_count == other.element_count
                and self.less_than == other.less_than)

    def __hash__(self):
        return hash((self.element_count, self.less_than))

    def __repr__(self):
        return f"GPoset(n={self.element_count}, relations={len(self.less_than)})"


def chain_poset(n):
    return GPoset(range(n), [(a, b) for a in range(n) for b in range(a + 1, n)])


def face_poset(K):
    """Faces of K under strict inclusion; element ids follow the (dim, lex) face order."""
    offsets = face_offsets(K)
    labels = list(K.all_faces())
    less_than = []
    for face in labels:
        fid = face_id(K, face, offsets)
        for size in range(1, len(face)):
            for sub in itertools.combinations(face, size):
                less_than.append((face_id(K, sub, offsets), fid))
    return GPoset(labels, less_than)


def poset_product(P, Q):
    """Pairs (a, b) with id a·|Q| + b; componentwise order."""
    m = Q.element_count
    labels = [(pa, qb) for pa in P.labels for qb in Q.labels]
    less_than = []
    for a in range(P.element_count):
        for b in range(m):
            for c in [a] + sorted(P.up[a]):
                for d in [b] + sorted(Q.up[b]):
                    if (c, d) != (a, b):
                        less_than.append((a * m + b, c * m + d))
    return GPoset(labels, less_than)


def _enumerate_chains(n, successors, max_dim, sort_chains):
    """All nonempty chains, grown upward along successors(x)."""
    limit = config.dim_cap if max_dim is None else min(max_dim, config.dim_cap)
    faces = []
    stack = [(x,) for x in range(n)]
    while stack:
        chain = stack.pop()
        faces.append(tuple(sorted(chain)) if sort_chains else chain)
        if len(faces) > config.face_cap:
            raise CapExceeded("face_cap", config.face_cap, len(faces))
        if len(chain) - 1 < limit:
            stack.extend(chain + (y,) for y in successors(chain[-1]))
        elif max_dim is None and successors(chain[-1]):
            raise CapExceeded("dim_cap", config.dim_cap, len(chain))
    return faces


def order_complex(P, max_dim=None):
    """Chains of P; optionally only those of dimension ≤ max_dim."""
    faces = _enumerate_chains(P.element_count, lambda x: P.up[x], max_dim, sort_chains=True)
    log_debug(f"order complex: {P.element_count} elements, {len(faces)} chains")
    return SComplex(P.labels, faces)


def barycentric_subdivision(K):
    return order_complex(face_poset(K))


def walker_product(K, L, max_dim=None):
    """Order complex of face_poset(K) × face_poset(L), built without materialising the product order.

    Vertex (i, j) has id i·|faces(L)| + j where i, j are (dim, lex) face ids; every
    step of a chain raises the id, so chains come out sorted.
    """
    PK, PL = face_poset(K), face_poset(L)
    m = PL.element_count
    up_k = [[a] + sorted(PK.up[a]) for a in range(PK.element_count)]
    up_l = [[b] + sorted(PL.up[b]) for b in range(m)]

    def successors(x):
        a, b = divmod(x, m)
        return [c * m + d for c in up_k[a] for d in up_l[b] if (c, d) != (a, b)]

    faces = _enumerate_chains(PK.element_count * m, successors, max_dim, sort_chains=False)
    labels = [(ka, lb) for ka in PK.labels for lb in PL.labels]
    log_debug(f"walker product: {len(labels)} vertices, {len(faces)} faces")
    return SComplex(labels, faces)


# ─────────────────────────────────────────────
# Simplicial maps
# ─────────────────────────────────────────────

@dataclass(frozen=True)
class SimplicialMap:
    source: SComplex
    target: SComplex
    vertex_map: tuple


def is_simplicial_map(f):
    if len(f.vertex_map) != f.source.vertex_count:
        return False
    if any(not 0 <= w < f.target.vertex_count for w in f.vertex_map):
        return False
    return all(f.target.has_face({f.vertex_map[v] for v in face})
               for face in f.source.maximal_faces())
