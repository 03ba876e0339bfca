# helpers/index.py
#
# The homological index hind of a free Z/p action.
#
# The characteristic classes live on the quotient's cell model:
#   p = 2  : w^k, with w the covering class;
#   p odd  : u^a in degree 2a and u^a ∪ v in degree 2a+1, with v the covering
#            class and u = β(v).
# hind is the largest degree whose class is not a coboundary. Classes are built
# one degree at a time and the scan stops at the first vanishing class; that
# vanishing is then checked to carry over to the next degree.

import itertools
from dataclasses import dataclass, field

from helpers.actions import (
    ProductCells,
    disjoint_union_action,
    e_k_g,
    is_equivariant_map,
    join_action,
    orbits,
    quotient,
    regularize,
    skeleton_action,
)
from helpers.cohomology import Cochain, bockstein, coboundary, cup, is_coboundary
from helpers.complexes import SimplicialMap
from helpers.errors import BadCertificate, MonotonicityError, NotACocycle, PMismatch, TargetMismatch
from helpers.log_utils import log_debug


@dataclass(frozen=True)
class AtLeast:
    value: int

    def __str__(self):
        return f"≥{self.value}"


@dataclass
class IndexReport:
    action: object
    p: int
    hind: int
    dim: int
    ind_bracket: tuple
    vanishing: list
    cocycles: dict
    quotient: object = None
    coind_lower: int = None

    def to_json(self):
        out = {
            "dim": self.dim,
            "hind": self.hind,
            "ind_bracket": list(self.ind_bracket),
            "p": self.p,
            "vanishing": list(self.vanishing),
        }
        if self.coind_lower is not None:
            out["coind_lower"] = self.coind_lower
        return out


@dataclass
class FormulaCheck:
    name: str
    expected: str
    got: object
    passed: bool
    details: dict = field(default_factory=dict)


@dataclass
class ProductIndBracket:
    hind: int
    lower: int
    upper: int
    via_map: str = None       # "a->b" or "b->a" when a verified map pinned the product

    def to_json(self):
        out = {"hind": self.hind, "ind_bracket": [self.lower, self.upper]}
        if self.via_map is not None:
            out["via_map"] = self.via_map
        return out


# ─────────────────────────────────────────────
# Characteristic classes
# ─────────────────────────────────────────────

def covering_class(q, section=None):
    """Monodromy 1-cocycle: the edge cell (a, b) picks up g^{e(b) − e(a)} when lifted.

    section optionally replaces the smallest-vertex lift (orbit id → vertex);
    different sections give cohomologous cocycles.
    """
    cells = q.quotient
    p = q.action.p
    shift = [0] * len(q.section)
    if section is not None:
        shift = [cells.exponent[v] for v in section]

    def exponent(v):
        return cells.exponent[v] - shift[cells.orbit_of[v]]

    w = Cochain(cells, 1, p, {cell: exponent(cell[1]) - exponent(cell[0]) for cell in cells.faces(1)})
    if not coboundary(w).is_zero():
        raise NotACocycle("covering class is not a cocycle")
    return w


def _class_steps(q):
    """Yield (degree, class, next_factor) for degree 0, 1, 2, ...; next_factor is the cup factor to the next degree."""
    p = q.action.p
    one = Cochain.constant(q.quotient, p)
    v = covering_class(q)
    if p == 2:
        current = one
        degree = 0
        while True:
            yield degree, current, v
            current = cup(current, v)
            degree += 1
    u = bockstein(v)
    even = one
    degree = 0
    while True:
        yield degree, even, v
        odd = cup(even, v)
        yield degree + 1, odd, None
        even = cup(even, u)
        degree += 2


def _cocycles(q):
    v = covering_class(q)
    if q.action.p == 2:
        return {"w": v}
    return {"v": v, "u": bockstein(v)}


def _check_next_vanishes(degree, current, witness, next_factor, next_class):
    if next_factor is not None:
        # δ(y ∪ f) = δy ∪ f when δf = 0
        if coboundary(cup(witness, next_factor)) != cup(current, next_factor):
            raise MonotonicityError(f"class in degree {degree + 1} did not vanish after degree {degree}")
    elif is_coboundary(next_class) is None:
        raise MonotonicityError(f"class in degree {degree + 1} did not vanish after degree {degree}")


def hind(a, index_certificates=(), coindex_certificates=()):
    """IndexReport of a; certificates are maps on the action as given, before any regularization."""
    original = a
    a = regularize(a)
    q = quotient(a)
    top = a.complex.dim
    vanishing = []
    steps = _class_steps(q)
    degree, current, factor = next(steps)
    while degree <= top:
        witness = is_coboundary(current)
        if witness is not None:
            if degree < top:
                _, next_class, _ = next(steps)
                _check_next_vanishes(degree, current, witness, factor, next_class)
            vanishing.extend([True] * (top + 1 - degree))
            break
        vanishing.append(False)
        if degree == top:
            break
        degree, current, factor = next(steps)

    value = vanishing.index(True) - 1 if True in vanishing else top
    upper = top
    for f in index_certificates:
        if not index_certificate_check(original, f):
            raise BadCertificate("index certificate is not an equivariant simplicial map")
        upper = min(upper, f.target.dim)
    coind = None
    for f in coindex_certificates:
        if not coindex_certificate_check(original, f):
            raise BadCertificate("co-index certificate is not an equivariant simplicial map")
        coind = max(coind if coind is not None else -1, f.source.dim)
    if coind is not None and coind > value:
        raise MonotonicityError(f"co-index certificate of dimension {coind} exceeds hind {value}")
    log_debug(f"hind={value} on dim {top}, vanishing={vanishing}")
    return IndexReport(a, a.p, value, top, (value, upper), vanishing, _cocycles(q), q, coind)


def hind_up_to(a, d):
    """Exact hind when it is below d (or when d ≥ dim), else AtLeast(d); works on the (d+1)-skeleton."""
    if d >= a.complex.dim:
        return hind(a).hind
    value = hind(skeleton_action(a, d + 1)).hind
    return value if value < d else AtLeast(d)


# ─────────────────────────────────────────────
# Certificates
# ─────────────────────────────────────────────

def coindex_certificate_check(a, f):
    """f: E_kG → X equivariant and simplicial certifies coind X ≥ k."""
    if f.target != a.complex:
        raise TargetMismatch("certificate does not map into the action's complex")
    model = e_k_g(a.p, f.source.dim)
    return f.source == model.complex and is_equivariant_map(f, model, a)


def index_certificate_check(a, f):
    """f: X → E_kG equivariant and simplicial certifies ind X ≤ k."""
    if f.source != a.complex:
        raise TargetMismatch("certificate does not start at the action's complex")
    model = e_k_g(a.p, f.target.dim)
    return f.target == model.complex and is_equivariant_map(f, a, model)


def find_coindex_certificate(a, k):
    """Equivariant simplicial E_kG → X fixed by base images x_0..x_k, or None."""
    p = a.p
    K = a.complex
    powers = a.powers
    model = e_k_g(p, k)
    vertices = range(K.vertex_count)
    chosen = []

    def extends(x):
        bases = chosen + [x]
        # factor 0 pinned to the identity: the face set is G-invariant
        for tail in itertools.product(range(p), repeat=len(bases) - 1):
            images = {bases[0]} | {powers[g][y] for g, y in zip(tail, bases[1:])}
            if not K.has_face(images):
                return False
        return True

    def search():
        if len(chosen) == k + 1:
            return True
        candidates = [orbit[0] for orbit in orbits(a)] if not chosen else vertices
        for x in candidates:
            if extends(x):
                chosen.append(x)
                if search():
                    return True
                chosen.pop()
        return False

    if not search():
        return None
    vertex_map = tuple(powers[g][chosen[f]] for f in range(k + 1) for g in range(p))
    return SimplicialMap(model.complex, K, vertex_map)


# ─────────────────────────────────────────────
# Formula verifiers
# ─────────────────────────────────────────────

def _same_p(a, b):
    if a.p != b.p:
        raise PMismatch(f"actions of Z/{a.p} and Z/{b.p}")


def verify_join_formula(a, b):
    _same_p(a, b)
    ha, hb = hind(a).hind, hind(b).hind
    got = hind(join_action(a, b)).hind
    total = ha + hb
    if a.p == 2 or (ha % 2 == 1 and hb % 2 == 1):
        expected = f"= {total + 1}"
        passed = got == total + 1
    else:
        upper = total + 1 if (ha % 2 == 1 or hb % 2 == 1) else total + 2
        expected = f"in [{max(ha, hb)}, {upper}]"
        passed = max(ha, hb) <= got <= upper
    return FormulaCheck("join", expected, got, passed, {"hind_a": ha, "hind_b": hb})


def _pullback(cells, c):
    """Pullback of a class on X/G along (X × Y)/G → X/G: c(σ) on the cells σ × vertex, zero elsewhere."""
    values = {(sigma, tau): c.values[sigma] for sigma, tau in cells.faces(c.degree)
              if len(tau) == 1 and c.values.get(sigma)}
    return Cochain(cells, c.degree, c.p, values)


def product_hind(a, b, m=None):
    """hind of X × Y with the diagonal action.

    Works on the cellular model of (X × Y)/G. Its classes are the pullbacks of
    the classes of X/G, so only those are built. With m given the scan stops at
    degree m + 1 and a class still alive there is reported as AtLeast(m + 1).
    """
    _same_p(a, b)
    a, b = regularize(a, model="orbit"), regularize(b, model="orbit")
    qa = quotient(a)
    top = min(a.complex.dim, b.complex.dim)
    limit = top if m is None else min(top, m + 1)
    cells = ProductCells(qa, quotient(b), max_dim=limit + 1)
    for degree, current, _ in _class_steps(qa):
        if degree > limit:
            break
        if is_coboundary(_pullback(cells, current)) is not None:
            log_debug(f"product hind={degree - 1} on cells f={cells.f_vector()}")
            return degree - 1
    return limit if limit == top else AtLeast(limit)


def _factor_upper(a, certificates):
    upper = a.complex.dim
    for f in certificates:
        if not index_certificate_check(a, f):
            raise BadCertificate("index certificate is not an equivariant simplicial map")
        upper = min(upper, f.target.dim)
    return upper


def product_ind_bracket(a, b, index_certificates=(), maps=()):
    """hind(X × Y) ≤ ind(X × Y) ≤ min(ind X, ind Y), tightened by certificates.

    index_certificates are maps from either factor into some E_kG. A verified
    equivariant map between the factors (maps, as X → Y or Y → X) makes the
    graph X → X × Y equivariant, so the product then has the index of its source.
    """
    _same_p(a, b)
    own = {"a": [], "b": []}
    for f in index_certificates:
        if f.source == a.complex:
            own["a"].append(f)
        elif f.source == b.complex:
            own["b"].append(f)
        else:
            raise TargetMismatch("certificate does not start at either factor")
    upper_a, upper_b = _factor_upper(a, own["a"]), _factor_upper(b, own["b"])
    value = product_hind(a, b)
    lower, upper, via = value, min(upper_a, upper_b), None
    for f in maps:
        if f.source == a.complex and f.target == b.complex and is_equivariant_map(f, a, b):
            source, source_upper, via = a, upper_a, "a->b"
        elif f.source == b.complex and f.target == a.complex and is_equivariant_map(f, b, a):
            source, source_upper, via = b, upper_b, "b->a"
        else:
            raise BadCertificate("map between the factors is not equivariant and simplicial")
        source_hind = hind(source).hind
        if source_hind != value:
            raise MonotonicityError(f"product hind {value} differs from hind {source_hind} of the map's source")
        upper = min(upper, source_upper)
    if lower > upper:
        raise MonotonicityError(f"product hind {lower} exceeds the index upper bound {upper}")
    log_debug(f"product ind bracket [{lower}, {upper}], hind={value}, via={via}")
    return ProductIndBracket(value, lower, upper, via)


def verify_product_formula(a, b):
    _same_p(a, b)
    ha, hb = hind(a).hind, hind(b).hind
    m = min(ha, hb)
    got = product_hind(a, b, m)
    if isinstance(got, AtLeast):
        return FormulaCheck("product", f"≤ {m}", str(got), False, {"hind_a": ha, "hind_b": hb})
    if a.p == 2 or m % 2 == 1:
        expected, passed = f"= {m}", got == m
    else:
        expected, passed = f"in [{m - 1}, {m}]", m - 1 <= got <= m
    return FormulaCheck("product", expected, got, passed, {"hind_a": ha, "hind_b": hb})


def verify_approximation_product(a, n):
    """hind(X × E_nG) = min(hind X, n)."""
    ha = hind(a).hind
    m = min(ha, n)
    got = product_hind(a, e_k_g(a.p, n), m)
    passed = not isinstance(got, AtLeast) and got == m
    return FormulaCheck("approximation", f"= {m}", str(got) if isinstance(got, AtLeast) else got,
                        passed, {"hind_a": ha, "n": n})


def verify_disjoint_union(a, b):
    """hind(X ⊔ Y) = max(hind X, hind Y) ≤ hind(X ∗ Y)."""
    _same_p(a, b)
    ha, hb = hind(a).hind, hind(b).hind
    union = hind(disjoint_union_action(a, b)).hind
    joined = hind(join_action(a, b)).hind
    passed = union == max(ha, hb) and union <= joined
    return FormulaCheck("disjoint-union", f"= {max(ha, hb)} ≤ {joined}", union, passed,
                        {"hind_a": ha, "hind_b": hb, "hind_join": joined})


def verify_monotonicity(a, b, f):
    """A verified equivariant map X → Y forces hind X ≤ hind Y."""
    _same_p(a, b)
    if not is_equivariant_map(f, a, b):
        raise BadCertificate("map is not equivariant and simplicial")
    ha, hb = hind(a).hind, hind(b).hind
    return FormulaCheck("monotonicity", f"≤ {hb}", ha, ha <= hb)
