# helpers/fpalg.py
#
# Exact linear algebra over the prime field F_p.
#
# Matrices are stored as sparse (row, col) → residue maps. scipy CSR carries the
# products, numpy the dense views. Rank, kernel and solve share one column
# reduction: pivots are keyed by the lowest nonzero row index of the reduced
# column and normalised to 1, and every pivot remembers which combination of
# original columns produced it.
#
# The same container with prime=False holds Z/p² matrices for the Bockstein
# lift; those only ever multiply, they are never reduced.

import numpy as np
from scipy.sparse import csr_matrix

from helpers.errors import DimensionMismatch, NotAPrime


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _clean(entries, modulus):
    out = {}
    for key, value in entries.items():
        value %= modulus
        if value:
            out[key] = value
    return out


def _axpy(target, coef, source, modulus):
    """target += coef * source, in place, dropping zeros."""
    for key, value in source.items():
        new = (target.get(key, 0) + coef * value) % modulus
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def _scaled(source, coef, modulus):
    return {key: (coef * value) % modulus for key, value in source.items()}


# ─────────────────────────────────────────────
# Vectors
# ─────────────────────────────────────────────

class FpVector:
    __slots__ = ("p", "length", "entries")

    def __init__(self, p, length, entries=None):
        self.p = p
        self.length = length
        self.entries = _clean(entries or {}, p)
        for index in self.entries:
            if not 0 <= index < length:
                raise DimensionMismatch(f"index {index} outside vector of length {length}")

    @classmethod
    def from_dense(cls, values, p):
        values = np.asarray(values, dtype=np.int64)
        return cls(p, len(values), {int(i): int(values[i]) for i in np.flatnonzero(values % p)})

    def to_dense(self):
        out = np.zeros(self.length, dtype=np.int64)
        for index, value in self.entries.items():
            out[index] = value
        return out

    def is_zero(self):
        return not self.entries

    def get(self, index):
        return self.entries.get(index, 0)

    def _check(self, other):
        if self.p != other.p or self.length != other.length:
            raise DimensionMismatch(f"vectors of shape {self.length}/F_{self.p} and {other.length}/F_{other.p}")

    def __add__(self, other):
        self._check(other)
        entries = dict(self.entries)
        _axpy(entries, 1, other.entries, self.p)
        return FpVector(self.p, self.length, entries)

    def __sub__(self, other):
        self._check(other)
        entries = dict(self.entries)
        _axpy(entries, -1, other.entries, self.p)
        return FpVector(self.p, self.length, entries)

    def scale(self, coef):
        return FpVector(self.p, self.length, _scaled(self.entries, coef, self.p))

    def __eq__(self, other):
        return (isinstance(other, FpVector) and self.p == other.p
                and self.length == other.length and self.entries == other.entries)

    def __hash__(self):
        return hash((self.p, self.length, frozenset(self.entries.items())))

    def __repr__(self):
        return f"FpVector(p={self.p}, len={self.length}, {dict(sorted(self.entries.items()))})"


# ─────────────────────────────────────────────
# Echelon basis (shared reduction engine)
# ─────────────────────────────────────────────

class EchelonBasis:
    """Incremental echelon basis of a subspace of F_p^n.

    Each pivot is stored as (vector, combination) with vector = Σ combination[j]·input_j,
    so reductions can report how a vector is expressed in the inserted inputs.
    """

    def __init__(self, p):
        self.p = p
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Return (residual, combination) with vec = residual + Σ combination·inputs."""
        residual = dict(vec)
        acc = {}
        p = self.p
        while residual:
            key = min(residual)
            pivot = self.pivots.get(key)
            if pivot is None:
                break
            coef = residual[key]
            pvec, pcomb = pivot
            _axpy(residual, -coef, pvec, p)
            if pcomb is not None:
                _axpy(acc, coef, pcomb, p)
        return residual, acc

    def contains(self, vec):
        residual, _ = self.reduce(vec)
        return not residual

    def insert(self, vec, comb=None):
        """Insert vec; returns None when it enlarged the span, else the relation comb − acc."""
        residual, acc = self.reduce(vec)
        relation = None
        if comb is not None:
            relation = dict(comb)
            _axpy(relation, -1, acc, self.p)
        if not residual:
            return relation if relation is not None else {}
        key = min(residual)
        inv = pow(residual[key], -1, self.p)
        self.pivots[key] = (_scaled(residual, inv, self.p),
                            None if relation is None else _scaled(relation, inv, self.p))
        return None


def span_rank(vectors, p):
    """Dimension of the span of sparse vectors (dicts or FpVectors) over F_p."""
    basis = EchelonBasis(p)
    for vec in vectors:
        basis.insert(vec.entries if isinstance(vec, FpVector) else vec)
    return len(basis)


# ─────────────────────────────────────────────
# Matrices
# ─────────────────────────────────────────────

class FpMatrix:
    """Sparse matrix over Z/p. Immutable once built; elimination results are cached."""

    def __init__(self, rows, cols, entries, p, prime=True):
        if rows < 0 or cols < 0:
            raise DimensionMismatch(f"negative shape {rows}×{cols}")
        if prime and not is_prime(p):
            raise NotAPrime(f"modulus {p} is not prime")
        if p < 2:
            raise NotAPrime(f"modulus {p} is not a valid modulus")
        self.rows = rows
        self.cols = cols
        self.p = p
        self.prime = prime
        self.entries = _clean(entries, p)
        for (r, c) in self.entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(f"entry ({r}, {c}) outside {rows}×{cols}")
        self._columns = None
        self._elimination = None

    # ── constructors ──

    @classmethod
    def from_dense(cls, array, p, prime=True):
        array = np.asarray(array, dtype=np.int64)
        if array.ndim == 1:
            array = array.reshape(1, -1)
        rows, cols = array.shape
        nz_rows, nz_cols = np.nonzero(array % p)
        entries = {(int(r), int(c)): int(array[r, c]) for r, c in zip(nz_rows, nz_cols)}
        return cls(rows, cols, entries, p, prime=prime)

    @classmethod
    def from_triplets(cls, rows, cols, triplets, p, prime=True):
        """Duplicate (row, col) triplets are summed."""
        entries = {}
        for r, c, value in triplets:
            entries[(r, c)] = entries.get((r, c), 0) + value
        return cls(rows, cols, entries, p, prime=prime)

    @classmethod
    def identity(cls, n, p):
        return cls(n, n, {(i, i): 1 for i in range(n)}, p)

    @classmethod
    def zeros(cls, rows, cols, p, prime=True):
        return cls(rows, cols, {}, p, prime=prime)

    # ── views ──

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        return FpMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()},
                        self.p, prime=self.prime)

    def to_dense(self):
        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), value in self.entries.items():
            out[r, c] = value
        return out

    def to_csr(self):
        if not self.entries:
            return csr_matrix((self.rows, self.cols), dtype=np.int64)
        keys = list(self.entries)
        data = np.fromiter((self.entries[k] for k in keys), dtype=np.int64, count=len(keys))
        row_idx = np.fromiter((k[0] for k in keys), dtype=np.int64, count=len(keys))
        col_idx = np.fromiter((k[1] for k in keys), dtype=np.int64, count=len(keys))
        return csr_matrix((data, (row_idx, col_idx)), shape=(self.rows, self.cols), dtype=np.int64)

    def columns(self):
        """Column j as a sparse {row: value} dict."""
        if self._columns is None:
            cols = [dict() for _ in range(self.cols)]
            for (r, c), value in self.entries.items():
                cols[c][r] = value
            self._columns = cols
        return self._columns

    def column(self, j):
        return FpVector(self.p, self.rows, self.columns()[j])

    # ── arithmetic ──

    def matvec(self, x):
        if x.length != self.cols:
            raise DimensionMismatch(f"matrix has {self.cols} columns, vector has length {x.length}")
        if not x.entries or not self.entries:
            return FpVector(self.p, self.rows)
        y = (self.to_csr() @ x.to_dense()) % self.p
        return FpVector(self.p, self.rows, {int(i): int(y[i]) for i in np.flatnonzero(y)})

    def matmul(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}×{self.cols} by {other.rows}×{other.cols}")
        if self.p != other.p:
            raise DimensionMismatch(f"moduli differ: {self.p} vs {other.p}")
        product = (self.to_csr() @ other.to_csr()).tocoo()
        entries = {}
        for r, c, value in zip(product.row, product.col, product.data):
            entries[(int(r), int(c))] = entries.get((int(r), int(c)), 0) + int(value)
        return FpMatrix(self.rows, other.cols, entries, self.p, prime=self.prime and other.prime)

    def hstack(self, other):
        if self.rows != other.rows:
            raise DimensionMismatch(f"row counts differ: {self.rows} vs {other.rows}")
        entries = dict(self.entries)
        for (r, c), value in other.entries.items():
            entries[(r, self.cols + c)] = value
        return FpMatrix(self.rows, self.cols + other.cols, entries, self.p, prime=self.prime)

    def is_zero(self):
        return not self.entries

    def __eq__(self, other):
        return (isinstance(other, FpMatrix) and self.shape == other.shape
                and self.p == other.p and self.entries == other.entries)

    def __hash__(self):
        return hash((self.shape, self.p, frozenset(self.entries.items())))

    def __repr__(self):
        return f"FpMatrix({self.rows}×{self.cols}, p={self.p}, nnz={len(self.entries)})"

    # ── elimination ──

    def _eliminate(self):
        if self._elimination is None:
            if not self.prime:
                raise NotAPrime(f"cannot eliminate over Z/{self.p}")
            basis = EchelonBasis(self.p)
            kernel = []
            for j, col in enumerate(self.columns()):
                relation = basis.insert(col, {j: 1})
                if relation is not None:
                    kernel.append(FpVector(self.p, self.cols, relation))
            self._elimination = (basis, kernel)
        return self._elimination

    def rank(self):
        return len(self._eliminate()[0])

    def kernel_basis(self):
        return list(self._eliminate()[1])

    def solve(self, b):
        """Some x with Mx = b, or None when b is outside the column space."""
        if b.length != self.rows:
            raise DimensionMismatch(f"matrix has {self.rows} rows, right-hand side has length {b.length}")
        basis, _ = self._eliminate()
        residual, acc = basis.reduce(b.entries)
        if residual:
            return None
        return FpVector(self.p, self.cols, acc)


def rank(M):
    return M.rank()


def solve(M, b):
    return M.solve(b)


def kernel_basis(M):
    return M.kernel_basis()
