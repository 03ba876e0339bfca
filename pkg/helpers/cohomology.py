# helpers/cohomology.py
#
# Chains and cochains over F_p on a cell model.
#
# A cell model is anything with dim, faces(d), index(d), face_count(d) and
# normalize(cell): an SComplex (cells are sorted faces) or the OrbitCells model
# of a quotient (cells are face orbits in orbit order). Boundary signs, the
# Alexander–Whitney cup and the Bockstein only ever see ordered tuples and
# normalize(), so both models share every formula below. A model that lists
# its own signed facets (ProductCells) gets boundaries and homology but no cup.

import threading
import weakref
from dataclasses import dataclass, field

from helpers.actions import quotient
from helpers.errors import ComplexMismatch, DimensionMismatch, NotACocycle
from helpers.fpalg import EchelonBasis, FpMatrix, FpVector, span_rank
from helpers.log_utils import log_debug

_matrix_cache = weakref.WeakKeyDictionary()
_matrix_lock = threading.Lock()


# ─────────────────────────────────────────────
# Boundary / coboundary matrices
# ─────────────────────────────────────────────

def _boundary(model, d, modulus, prime=True):
    """∂_d : C_d → C_{d-1}, defined for 0 ≤ d ≤ dim+1 (zero-sized at the ends)."""
    key = (d, modulus)
    with _matrix_lock:
        cached = _matrix_cache.setdefault(model, {}).get(key)
    if cached is not None:
        return cached
    rows = model.face_count(d - 1) if d >= 1 else 0
    cols = model.face_count(d)
    triplets = []
    if d >= 1:
        below = model.index(d - 1)
        facets = getattr(model, "facets", None)
        for j, cell in enumerate(model.faces(d)):
            if facets is not None:
                for facet, sign in facets(cell):
                    triplets.append((below[facet], j, sign))
                continue
            for i in range(d + 1):
                facet = model.normalize(cell[:i] + cell[i + 1:])
                triplets.append((below[facet], j, -1 if i % 2 else 1))
    matrix = FpMatrix.from_triplets(rows, cols, triplets, modulus, prime=prime)
    with _matrix_lock:
        _matrix_cache.setdefault(model, {})[key] = matrix
    log_debug(f"∂_{d} mod {modulus}: {rows}×{cols}, nnz={len(matrix.entries)}")
    return matrix


def boundary_matrix(K, d, p):
    if not 1 <= d <= K.dim:
        raise DimensionMismatch(f"boundary degree {d} outside 1..{K.dim}")
    return _boundary(K, d, p)


def coboundary_matrix(K, d, p):
    """δ_d : C^d → C^{d+1}."""
    return _boundary(K, d + 1, p).transpose()


def _rank(model, d, p):
    return _boundary(model, d, p).rank() if 1 <= d <= model.dim else 0


def homology_dims(K, p):
    return [K.face_count(n) - _rank(K, n, p) - _rank(K, n + 1, p) for n in range(K.dim + 1)]


def cohomology_dims(K, p):
    dims = []
    for n in range(K.dim + 1):
        delta_n = coboundary_matrix(K, n, p).rank() if n < K.dim else 0
        delta_prev = coboundary_matrix(K, n - 1, p).rank() if n >= 1 else 0
        dims.append(K.face_count(n) - delta_n - delta_prev)
    return dims


# ─────────────────────────────────────────────
# Cochains
# ─────────────────────────────────────────────

@dataclass
class Cochain:
    complex: object
    degree: int
    p: int
    values: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = {cell: v % self.p for cell, v in self.values.items() if v % self.p}

    @classmethod
    def zero(cls, model, degree, p):
        return cls(model, degree, p, {})

    @classmethod
    def constant(cls, model, p, value=1):
        return cls(model, 0, p, {cell: value for cell in model.faces(0)})

    @classmethod
    def from_vector(cls, model, degree, vec):
        cells = model.faces(degree)
        return cls(model, degree, vec.p, {cells[i]: v for i, v in vec.entries.items()})

    def to_vector(self):
        index = self.complex.index(self.degree)
        return FpVector(self.p, self.complex.face_count(self.degree),
                        {index[cell]: v for cell, v in self.values.items()})

    def is_zero(self):
        return not self.values

    def _check(self, other):
        if self.complex is not other.complex or self.p != other.p:
            raise ComplexMismatch("cochains live on different complexes")
        if self.degree != other.degree:
            raise ComplexMismatch(f"degrees differ: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check(other)
        values = dict(self.values)
        for cell, v in other.values.items():
            values[cell] = values.get(cell, 0) + v
        return Cochain(self.complex, self.degree, self.p, values)

    def __sub__(self, other):
        return self + other * -1

    def __mul__(self, scalar):
        return Cochain(self.complex, self.degree, self.p, {c: v * scalar for c, v in self.values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Cochain) and self.complex is other.complex
                and self.degree == other.degree and self.p == other.p and self.values == other.values)


def coboundary(c):
    vec = coboundary_matrix(c.complex, c.degree, c.p).matvec(c.to_vector())
    return Cochain.from_vector(c.complex, c.degree + 1, vec)


def is_cocycle(c):
    return coboundary(c).is_zero()


def is_coboundary(c):
    """Some x with δx = c, or None when c represents a nonzero class."""
    if not is_cocycle(c):
        raise NotACocycle(f"degree-{c.degree} cochain has nonzero coboundary")
    if c.is_zero():
        return Cochain.zero(c.complex, c.degree - 1, c.p)
    if c.degree == 0:
        return None
    x = coboundary_matrix(c.complex, c.degree - 1, c.p).solve(c.to_vector())
    if x is None:
        return None
    return Cochain.from_vector(c.complex, c.degree - 1, x)


def cup(a, b):
    """Alexander–Whitney: (a∪b)(v_0…v_{k+l}) = a(v_0…v_k)·b(v_k…v_{k+l})."""
    if a.complex is not b.complex:
        raise ComplexMismatch("cup of cochains on different complexes")
    if a.p != b.p:
        raise ComplexMismatch(f"cup of cochains mod {a.p} and mod {b.p}")
    if getattr(a.complex, "facets", None) is not None:
        raise ComplexMismatch("cup needs a simplex-ordered cell model")
    model, k, l = a.complex, a.degree, b.degree
    values = {}
    if a.values and b.values:
        for cell in model.faces(k + l):
            front = a.values.get(model.normalize(cell[:k + 1]))
            if not front:
                continue
            back = b.values.get(model.normalize(cell[k:]))
            if back:
                values[cell] = front * back
    return Cochain(model, k + l, a.p, values)


def bockstein(c):
    """Lift to [0, p) in Z/p², cobound, divide by p."""
    if not is_cocycle(c):
        raise NotACocycle(f"degree-{c.degree} cochain has nonzero coboundary")
    p = c.p
    lifted = _boundary(c.complex, c.degree + 1, p * p, prime=False).transpose()
    vec = lifted.matvec(FpVector(p * p, lifted.cols, c.to_vector().entries))
    values = {}
    cells = c.complex.faces(c.degree + 1)
    for i, v in vec.entries.items():
        if v % p:
            raise NotACocycle("coboundary of the lift is not divisible by p")
        values[cells[i]] = v // p
    return Cochain(c.complex, c.degree + 1, p, values)


# ─────────────────────────────────────────────
# Chains and homology bases
# ─────────────────────────────────────────────

def chain_vector(model, d, chain, p):
    """{cell: coefficient} → FpVector over the d-cells."""
    index = model.index(d)
    return FpVector(p, model.face_count(d), {index[cell]: v for cell, v in chain.items()})


def chain_boundary(model, d, vec):
    if d == 0:
        return FpVector(vec.p, 0)
    return _boundary(model, d, vec.p).matvec(vec)


def cycle_join(K, L, J, c, d, p):
    """Chain-level join c∗d on J = join(K, L); c and d map faces to coefficients."""
    shift = K.vertex_count
    out = {}
    for sigma, x in c.items():
        for tau, y in d.items():
            cell = tuple(sigma) + tuple(v + shift for v in tau)
            out[cell] = (out.get(cell, 0) + x * y) % p
    degree = (len(next(iter(c))) if c else 0) + (len(next(iter(d))) if d else 0) - 1
    return chain_vector(J, degree, {cell: v for cell, v in out.items() if v}, p)


class HomologyBasis:
    """Echelon representatives of H_n, with coordinates of any n-cycle in that basis."""

    def __init__(self, model, n, p):
        self.p = p
        self.echelon = EchelonBasis(p)
        if n + 1 <= model.dim:
            for col in _boundary(model, n + 1, p).columns():
                self.echelon.insert(col, {})
        self.representatives = []
        cycles = (_boundary(model, n, p).kernel_basis() if n >= 1
                  else [FpVector(p, model.face_count(0), {i: 1}) for i in range(model.face_count(0))])
        for z in cycles:
            tag = {len(self.representatives): 1}
            if self.echelon.insert(z.entries, tag) is None:
                self.representatives.append(z)

    def __len__(self):
        return len(self.representatives)

    def coordinates(self, cycle):
        residual, acc = self.echelon.reduce(cycle.entries)
        if residual:
            raise NotACocycle("vector is not a cycle of this degree")
        return acc


# ─────────────────────────────────────────────
# Smith sequences and transfer
# ─────────────────────────────────────────────

def _sort_sign(seq):
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


def _translation_matrix(a, d):
    """The chain map T on C_d(X): σ ↦ ±sorted(g·σ)."""
    K = a.complex
    index = K.index(d)
    triplets = []
    for j, face in enumerate(K.faces(d)):
        image = tuple(a.generator[v] for v in face)
        triplets.append((index[tuple(sorted(image))], j, _sort_sign(image)))
    n = K.face_count(d)
    return FpMatrix.from_triplets(n, n, triplets, a.p)


def _power_sum(T, p):
    """N = 1 + T + … + T^{p-1}."""
    total = dict(FpMatrix.identity(T.rows, p).entries)
    current = FpMatrix.identity(T.rows, p)
    for _ in range(1, p):
        current = T.matmul(current)
        for key, v in current.entries.items():
            total[key] = total.get(key, 0) + v
    return FpMatrix(T.rows, T.cols, total, p)


def _one_minus(T, p):
    entries = {key: -v for key, v in T.entries.items()}
    for i in range(T.rows):
        entries[(i, i)] = entries.get((i, i), 0) + 1
    return FpMatrix(T.rows, T.cols, entries, p)


@dataclass
class SmithDecomposition:
    action: object
    p: int
    n_complex: list       # N_d per degree; NC_d = image
    rho_complex: list     # ρ_d per degree; ρC_d = image
    n_dims: list = field(default_factory=list)
    rho_dims: list = field(default_factory=list)
    chain_exactness: list = field(default_factory=list)


def _sub_homology(K, maps, p):
    """dims of H of the image subcomplex im(M_*), via rank(M) − rank(∂M) − rank(∂M) one up."""
    dims = []
    for d in range(K.dim + 1):
        m_rank = maps[d].rank()
        inner = _boundary(K, d, p).matmul(maps[d]).rank() if d >= 1 else 0
        outer = _boundary(K, d + 1, p).matmul(maps[d + 1]).rank() if d + 1 <= K.dim else 0
        dims.append(m_rank - inner - outer)
    return dims


def _sequences(s):
    """(name, sub map, quotient map) for each short exact sequence 0 → im A → C → im f → 0."""
    if s.p == 2:
        return [("N", s.n_complex, s.n_complex)]
    return [("N→ρ", s.n_complex, s.rho_complex), ("ρ→N", s.rho_complex, s.n_complex)]


def smith_decomposition(a):
    K, p = a.complex, a.p
    T = [_translation_matrix(a, d) for d in range(K.dim + 1)]
    n_maps = [_power_sum(t, p) for t in T]
    rho_maps = [_one_minus(t, p) for t in T]
    s = SmithDecomposition(a, p, n_maps, rho_maps)
    s.n_dims = _sub_homology(K, n_maps, p)
    s.rho_dims = _sub_homology(K, rho_maps, p)
    for name, sub, quot in _sequences(s):
        for d in range(K.dim + 1):
            composite_zero = quot[d].matmul(sub[d]).is_zero()
            exact = composite_zero and sub[d].rank() + quot[d].rank() == K.face_count(d)
            s.chain_exactness.append((name, d, sub[d].rank(), K.face_count(d), quot[d].rank(), exact))
    log_debug(f"smith: H(NC)={s.n_dims}, H(ρC)={s.rho_dims}")
    return s


def smith_special_homology(a):
    return smith_decomposition(a).rho_dims


@dataclass
class ExactnessRow:
    sequence: str
    node: str
    degree: int
    dim: int
    rank_in: int
    rank_out: int
    defect: int
    composite_zero: bool = True   # the map into the node followed by the map out of it is zero on homology


def _induced_rank(images, boundaries, p):
    """rank of the induced map on homology: dim(span(images ∪ boundaries)) − dim span(boundaries)."""
    base = span_rank(boundaries, p)
    return span_rank(list(boundaries) + list(images), p) - base


def _in_span(vectors, spanning, p):
    return _induced_rank(vectors, spanning, p) == 0


def _cycles_of_image(K, d, M, p):
    """Z_d of im(M): M·ker(∂_d M), as vectors of C_d."""
    if d == 0:
        return [M.column(j) for j in range(M.cols)]
    return [M.matvec(x) for x in _boundary(K, d, p).matmul(M).kernel_basis()]


def _boundaries_of_image(K, d, M_up, p):
    if d + 1 > K.dim:
        return []
    product = _boundary(K, d + 1, p).matmul(M_up)
    return [product.column(j) for j in range(product.cols)]


def smith_long_exactness_check(s):
    """Rank, defect and vanishing composites at every node of the long exact homology sequences."""
    K, p = s.action.complex, s.p
    top = K.dim
    rows = []
    plain_dims = homology_dims(K, p)
    identity = [FpMatrix.identity(K.face_count(d), p) for d in range(top + 1)]
    for name, sub, quot in _sequences(s):
        sub_dims = _sub_homology(K, sub, p)
        quot_dims = _sub_homology(K, quot, p)
        inc, proj, conn = {}, {}, {}
        composite = {}
        conn_images, b_plain = {}, {}
        for d in range(top + 1):
            z_sub = _cycles_of_image(K, d, sub[d], p)
            b_plain[d] = _boundaries_of_image(K, d, identity[d + 1] if d < top else None, p)
            inc[d] = _induced_rank(z_sub, b_plain[d], p)

            z_plain = _cycles_of_image(K, d, identity[d], p)
            b_quot = _boundaries_of_image(K, d, quot[d + 1] if d < top else None, p)
            proj[d] = _induced_rank([quot[d].matvec(z) for z in z_plain], b_quot, p)
            composite[("total", d)] = _in_span([quot[d].matvec(z) for z in z_sub], b_quot, p)

            if d == 0:
                conn[d] = 0
                conn_images[d] = []
                composite[("quotient", d)] = True
            else:
                # z = f(y) is a cycle of im f; its lift is y itself and ∂y lands in the sub complex
                lifts = _boundary(K, d, p).matmul(quot[d]).kernel_basis()
                conn_images[d] = [_boundary(K, d, p).matvec(y) for y in lifts]
                b_sub = _boundaries_of_image(K, d - 1, sub[d], p)
                conn[d] = _induced_rank(conn_images[d], b_sub, p)
                composite[("quotient", d)] = _in_span([_boundary(K, d, p).matvec(z) for z in z_plain], b_sub, p)

        for d in range(top + 1):
            composite[("sub", d)] = _in_span(conn_images.get(d + 1, []), b_plain[d], p)

        for d in range(top, -1, -1):
            nodes = [
                ("sub", sub_dims[d], conn.get(d + 1, 0), inc[d]),
                ("total", plain_dims[d], inc[d], proj[d]),
                ("quotient", quot_dims[d], proj[d], conn[d]),
            ]
            for node, dim, rank_in, rank_out in nodes:
                rows.append(ExactnessRow(name, node, d, dim, rank_in, rank_out, dim - rank_out - rank_in,
                                         composite[(node, d)]))
    return rows


def quotient_chain_map(q, n):
    """Orbit-sum inclusion NC_n ↪ C_n as a matrix from quotient cells to X-faces."""
    a = q.action
    K = a.complex
    index = K.index(n)
    triplets = []
    for j, cell in enumerate(q.quotient.faces(n)):
        for k in range(a.p):
            image = tuple(a.powers[k][v] for v in cell)
            triplets.append((index[tuple(sorted(image))], j, _sort_sign(image)))
    return FpMatrix.from_triplets(K.face_count(n), q.quotient.face_count(n), triplets, a.p)


def transfer_matrix(a, n, q=None):
    """H_n(X/G) → H_n(X) induced by orbit sums, in echelon homology bases."""
    if not 0 <= n <= a.complex.dim:
        raise DimensionMismatch(f"transfer degree {n} outside 0..{a.complex.dim}")
    q = q or quotient(a)
    source = HomologyBasis(q.quotient, n, a.p)
    target = HomologyBasis(a.complex, n, a.p)
    chain_map = quotient_chain_map(q, n)
    entries = {}
    for j, rep in enumerate(source.representatives):
        for i, v in target.coordinates(chain_map.matvec(rep)).items():
            entries[(i, j)] = v
    return FpMatrix(len(target), len(source), entries, a.p)
