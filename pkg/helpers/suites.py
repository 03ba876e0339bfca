# helpers/suites.py
#
# Verification suites behind `hindlab_main.py verify`. A suite is an ordered
# list of (check name, callable); every callable returns a CheckRow. Checks run
# on a thread pool, rows come back in registration order, and an instance that
# trips a cap is reported as skipped rather than passed.

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from tqdm import tqdm

import config
from helpers.actions import (
    e_k_g,
    skeleton_action,
    sphere_action,
    subdivision_action,
)
from helpers.cohomology import (
    Cochain,
    boundary_matrix,
    chain_boundary,
    coboundary,
    coboundary_matrix,
    cup,
    cycle_join,
    homology_dims,
    is_coboundary,
    smith_decomposition,
    smith_long_exactness_check,
    transfer_matrix,
)
from helpers.complexes import join, walker_product
from helpers.corpus import Lcg, random_cochain, random_complex, random_free_action, random_graph, random_poset_action
from helpers.errors import CapExceeded, HindlabError, UnknownSuite
from helpers.fpalg import FpVector
from helpers.graphs import (
    chromatic_number,
    complete,
    cycle,
    categorical_product,
    homological_chromatic_number,
    petersen,
    verify_hom_hedetniemi,
    verify_product_chromatic,
)
from helpers.hypergraphs import (
    ConditionFailed,
    afl_bound,
    b_edge_complex,
    coloring_to_equivariant_map,
    compatibility_hypergraph,
    certified_product_bound,
    product_chromatic_bound,
    face_poset_action,
    from_graph,
    hyper_chromatic_number,
    kneser_hypergraph,
    product_compatibility_inclusion,
    edge_complex_homomorphism,
    optimal_hyper_coloring,
    poset_coloring_bound,
    zhu_product,
)
from helpers.index import (
    find_coindex_certificate,
    hind,
    verify_approximation_product,
    verify_join_formula,
    verify_product_formula,
)
from helpers.log_utils import log_failure, log_info
from helpers.statistics import suite_stats


@dataclass
class CheckRow:
    expected: object
    got: object
    passed: bool
    skipped: bool = False
    name: str = ""
    elapsed: float = 0.0

    def to_json(self):
        return {
            "check": self.name,
            "expected": str(self.expected),
            "got": str(self.got),
            "passed": self.passed,
            "skipped": self.skipped,
        }


@dataclass
class SuiteResult:
    suite: str
    rows: list
    interrupted: bool = False

    @property
    def passed(self):
        return not self.interrupted and all(row.passed or row.skipped for row in self.rows)


def _equal(expected, got):
    return CheckRow(expected, got, got == expected)


def _at_most(bound, value):
    return CheckRow(f"≥ {bound}", value, bound <= value)


def _from_formula(check):
    return CheckRow(check.expected, check.got, check.passed)


# ─────────────────────────────────────────────
# Instance libraries
# ─────────────────────────────────────────────

def _p2_library():
    return [
        ("S0", lambda: sphere_action(0)),
        ("S1", lambda: sphere_action(1)),
        ("S2", lambda: sphere_action(2)),
        ("E0", lambda: e_k_g(2, 0)),
        ("E1", lambda: e_k_g(2, 1)),
        ("E2", lambda: e_k_g(2, 2)),
        ("E3", lambda: e_k_g(2, 3)),
        ("E3^(1)", lambda: skeleton_action(e_k_g(2, 3), 1)),
        ("S2^(1)", lambda: skeleton_action(sphere_action(2), 1)),
    ]


def _pairs(library):
    return [(name_a, build_a, name_b, build_b)
            for i, (name_a, build_a) in enumerate(library)
            for name_b, build_b in library[i:]]


# ─────────────────────────────────────────────
# Suites
# ─────────────────────────────────────────────

def _indexes(seed):
    checks = []
    for p in (2, 3, 5):
        for k in range(5):
            checks.append((f"hind E_{k}(Z/{p})", lambda p=p, k=k: _equal(k, hind(e_k_g(p, k)).hind)))
    for n in range(5):
        checks.append((f"hind S^{n}", lambda n=n: _equal(n, hind(sphere_action(n)).hind)))
    return checks


def _join_p2(seed):
    return [(f"{na} * {nb}", lambda a=a, b=b: _from_formula(verify_join_formula(a(), b())))
            for na, a, nb, b in _pairs(_p2_library())]


def _product_p2(seed):
    checks = [(f"{na} x {nb}", lambda a=a, b=b: _from_formula(verify_product_formula(a(), b())))
              for na, a, nb, b in _pairs(_p2_library())]
    checks.append(("S2 x S1 = 1", lambda: _equal(1, verify_product_formula(sphere_action(2), sphere_action(1)).got)))
    return checks


def _odd_p(seed):
    library = [(f"E{k}", lambda k=k: e_k_g(3, k)) for k in range(4)]
    checks = [(f"{na} * {nb} (Z/3)", lambda a=a, b=b: _from_formula(verify_join_formula(a(), b())))
              for na, a, nb, b in _pairs(library)]
    checks += [(f"{na} x {nb} (Z/3)", lambda a=a, b=b: _from_formula(verify_product_formula(a(), b())))
               for na, a, nb, b in _pairs(library)]
    checks.append(("E1 * E1 (Z/5)", lambda: _from_formula(verify_join_formula(e_k_g(5, 1), e_k_g(5, 1)))))
    return checks


def _approximation(seed):
    library = _p2_library() + [(f"E{k}(Z/3)", lambda k=k: e_k_g(3, k)) for k in range(4)]
    checks = []
    for name, build in library:
        for n in range(4):
            checks.append((f"{name} x E_{n}", lambda b=build, n=n: _from_formula(verify_approximation_product(b(), n))))
    return checks


def _smith_rows(a):
    s = smith_decomposition(a)
    bad = [row for row in s.chain_exactness if not row[-1]]
    return CheckRow("all exact", f"{len(bad)} inexact", not bad)


def _long_exact_rows(a):
    s = smith_decomposition(a)
    bad = [row for row in smith_long_exactness_check(s) if row.defect != 0 or not row.composite_zero]
    return CheckRow("defect 0 and zero composites everywhere", f"{len(bad)} failing nodes", not bad)


def _transfer_injective(a):
    T = transfer_matrix(a, a.complex.dim)
    return CheckRow(f"rank {T.cols}", f"rank {T.rank()}", T.rank() == T.cols)


def _smith(seed):
    library = [
        ("S1", lambda: sphere_action(1)),
        ("S2", lambda: sphere_action(2)),
        ("E1(Z/3)", lambda: e_k_g(3, 1)),
        ("E2(Z/3)", lambda: e_k_g(3, 2)),
        ("random(Z/3)", lambda: random_free_action(Lcg(seed), 3, 3)),
        ("random(Z/2)", lambda: random_free_action(Lcg(seed + 1), 2, 3)),
    ]
    checks = []
    for name, build in library:
        checks.append((f"{name} short sequences", lambda b=build: _smith_rows(b())))
        checks.append((f"{name} long sequences", lambda b=build: _long_exact_rows(b())))
    for n in range(4):
        checks.append((f"transfer S^{n}", lambda n=n: _transfer_injective(sphere_action(n))))
    return checks


def _random_graph_check(seed):
    rng = Lcg(seed)
    H = random_graph(rng, rng.randint(3, config.random_max_vertices))
    if not H.edges:
        return CheckRow("h-χ ≤ χ", "no edges", True, skipped=True)
    h_chi, chi = homological_chromatic_number(H), chromatic_number(H)
    return CheckRow(f"≤ {chi}", h_chi, h_chi <= chi)


def _hedetniemi(H1, H2):
    report = verify_hom_hedetniemi(H1, H2)
    got = report.h_chi_product if report.box_skipped else (report.h_chi_product, report.box_product_hind)
    return CheckRow(min(report.h_chi_1, report.h_chi_2), got, report.passed)


def _graphs(seed):
    checks = [(f"h-χ K{n}", lambda n=n: _equal(n, homological_chromatic_number(complete(n)))) for n in range(2, 6)]
    checks.append(("h-χ C5", lambda: _equal(3, homological_chromatic_number(cycle(5)))))
    checks.append(("χ Petersen", lambda: _equal(3, chromatic_number(petersen()))))
    checks.append(("h-χ Petersen", lambda: _equal(3, homological_chromatic_number(petersen()))))
    checks += [(f"random graph {i}", lambda i=i: _random_graph_check(seed + i))
               for i in range(config.random_graph_count)]
    graphs = [("K2", lambda: complete(2)), ("K3", lambda: complete(3)),
              ("K4", lambda: complete(4)), ("C5", lambda: cycle(5))]
    for na, a, nb, b in _pairs(graphs):
        checks.append((f"hedetniemi {na} x {nb}", lambda a=a, b=b: _hedetniemi(a(), b())))
        checks.append((f"χ({na} x {nb}) ≥ min h-χ",
                       lambda a=a, b=b: CheckRow(*_chromatic_row(verify_product_chromatic(a(), b())))))
    return checks


def _chromatic_row(result):
    chi, bound, holds = result
    return f"≥ {bound}", chi, holds


def _poset_bound_check(P, r):
    C = compatibility_hypergraph(P, r)
    chi, coloring = optimal_hyper_coloring(C)
    bound = poset_coloring_bound(P, r)
    report = coloring_to_equivariant_map(P, coloring, r)
    return CheckRow(f"≥ {bound}, map verified", (chi, report.passed), bound <= chi and report.passed)


def _afl_check(H, p):
    return _at_most(afl_bound(H, p), hyper_chromatic_number(H))


def _product_bound_check(H1, H2, p):
    bound = product_chromatic_bound(H1, H2, p)
    if isinstance(bound, ConditionFailed):
        bound = bound.fallback
    return _at_most(bound, hyper_chromatic_number(zhu_product(H1, H2)))


def _certified_bound_check(H1, H2, p, k):
    certificates = [find_coindex_certificate(b_edge_complex(H, p), k) for H in (H1, H2)]
    if any(f is None for f in certificates):
        return CheckRow(f"co-index ≥ {k} certificates", "none found", False)
    bound = certified_product_bound(H1, H2, p, certificates)
    return _at_most(bound, hyper_chromatic_number(zhu_product(H1, H2)))


def _zhu_matches_graph_product(G1, G2):
    return _equal(chromatic_number(categorical_product(G1, G2)),
                  hyper_chromatic_number(zhu_product(from_graph(G1), from_graph(G2))))


def _hypergraphs(seed):
    k3, k4, c5 = (from_graph(complete(3)), from_graph(complete(4)), from_graph(cycle(5)))
    triple4, triple5 = kneser_hypergraph(4, 1, 3), kneser_hypergraph(5, 1, 3)
    checks = [
        ("χ KG^3(5,1)", lambda: _equal(3, hyper_chromatic_number(triple5))),
        ("hind B_edge(K3)", lambda: _equal(1, hind(b_edge_complex(k3, 2)).hind)),
        ("AFL K3", lambda: _afl_check(k3, 2)),
        ("AFL K4", lambda: _afl_check(k4, 2)),
        ("AFL C5", lambda: _afl_check(c5, 2)),
        ("AFL KG^3(4,1)", lambda: _afl_check(triple4, 3)),
        ("AFL KG^3(5,1)", lambda: _afl_check(triple5, 3)),
        ("poset bound face poset E1(Z/2), r=2", lambda: _poset_bound_check(face_poset_action(e_k_g(2, 1)), 2)),
        ("poset bound face poset E1(Z/3), r=2", lambda: _poset_bound_check(face_poset_action(e_k_g(3, 1)), 2)),
        ("poset bound face poset E1(Z/3), r=3", lambda: _poset_bound_check(face_poset_action(e_k_g(3, 1)), 3)),
        ("edge homomorphism K3", lambda: _edge_homomorphism_row(k3, 2)),
        ("edge homomorphism KG^3(4,1)", lambda: _edge_homomorphism_row(triple4, 3)),
        ("product inclusion face posets E1(Z/2)", lambda: _equal(True, product_compatibility_inclusion(
            face_poset_action(e_k_g(2, 1)), face_poset_action(e_k_g(2, 1)), 2))),
        ("product bound K3 x K3", lambda: _product_bound_check(k3, k3, 2)),
        ("product bound K3 x K4", lambda: _product_bound_check(k3, k4, 2)),
        ("product bound K3 x C5", lambda: _product_bound_check(k3, c5, 2)),
        ("certified product bound K4 x K4", lambda: _certified_bound_check(k4, k4, 2, 1)),
        ("zhu = categorical K2 x K3", lambda: _zhu_matches_graph_product(complete(2), complete(3))),
        ("zhu = categorical K3 x K3", lambda: _zhu_matches_graph_product(complete(3), complete(3))),
        ("zhu = categorical K3 x C5", lambda: _zhu_matches_graph_product(complete(3), cycle(5))),
    ]
    for i in range(3):
        checks.append((f"poset bound random Z/3 poset {i}, r=3",
                       lambda i=i: _poset_bound_check(random_poset_action(Lcg(seed + i), 3, 3), 3)))
        checks.append((f"product inclusion random Z/3 posets {i}",
                       lambda i=i: _equal(True, product_compatibility_inclusion(random_poset_action(Lcg(seed + 10 + i), 3, 3),
                                                                     random_poset_action(Lcg(seed + 20 + i), 3, 2), 3))))
    return checks


def _edge_homomorphism_row(H, r):
    report = edge_complex_homomorphism(H, r)
    return CheckRow("verified", f"{len(report.failures)} failures", report.verified)


# ─────────────────────────────────────────────
# Structural properties over the random corpus
# ─────────────────────────────────────────────

def _random_cocycle(rng, K, d, p):
    basis = coboundary_matrix(K, d, p).kernel_basis()
    vec = FpVector(p, K.face_count(d))
    for b in basis:
        vec = vec + b.scale(rng.randint(0, p - 1))
    return Cochain.from_vector(K, d, vec)


def _count_failures(seed, case):
    failures = 0
    for i in range(config.property_cases):
        rng = Lcg(seed + i)
        if not case(rng, (2, 3, 5)[i % 3]):
            failures += 1
    return _equal(0, failures)


def _delta_squared(rng, p):
    K = random_complex(rng, rng.randint(1, config.random_max_vertices), max_faces=4)
    return all(coboundary(coboundary(random_cochain(rng, K, d, p))).is_zero() for d in range(K.dim + 1))


def _leibniz(rng, p):
    K = random_complex(rng, rng.randint(2, config.random_max_vertices), max_faces=4)
    if K.dim < 1:
        return True
    k = rng.randint(0, K.dim - 1)
    l = rng.randint(0, K.dim - 1 - k)
    a, b = random_cochain(rng, K, k, p), random_cochain(rng, K, l, p)
    sign = -1 if k % 2 else 1
    return coboundary(cup(a, b)) == cup(coboundary(a), b) + cup(a, coboundary(b)) * sign


def _graded_commutative(rng, p):
    K = random_complex(rng, rng.randint(2, config.random_max_vertices), max_faces=4)
    k = rng.randint(0, K.dim)
    l = rng.randint(0, K.dim - k)
    a, b = _random_cocycle(rng, K, k, p), _random_cocycle(rng, K, l, p)
    sign = -1 if (k * l) % 2 else 1
    return is_coboundary(cup(a, b) - cup(b, a) * sign) is not None


def _monotone_vanishing(rng, p):
    report = hind(random_free_action(rng, (2, 3)[p % 2], rng.randint(1, 3)))
    v = report.vanishing
    expected = v.index(True) - 1 if True in v else report.dim
    return v == sorted(v) and report.hind == expected


def _subdivision_invariant(rng, p):
    a = random_free_action(rng, (2, 3)[p % 2], rng.randint(1, 2))
    return hind(a).hind == hind(subdivision_action(a)).hind


def _kunneth(rng, p):
    K = random_complex(rng, rng.randint(1, 4), max_faces=2)
    L = random_complex(rng, rng.randint(1, 4), max_faces=2)
    hk, hl = homology_dims(K, p), homology_dims(L, p)
    got = homology_dims(walker_product(K, L), p)
    expected = [sum(hk[i] * hl[n - i] for i in range(len(hk)) if 0 <= n - i < len(hl))
                for n in range(len(got))]
    return got == expected


def _reduced(dims):
    return [dims[0] - 1] + dims[1:]


def _milnor_join(rng, p):
    K = random_complex(rng, rng.randint(1, 5), max_faces=3)
    L = random_complex(rng, rng.randint(1, 5), max_faces=3)
    rk, rl = _reduced(homology_dims(K, p)), _reduced(homology_dims(L, p))
    got = _reduced(homology_dims(join(K, L), p))
    expected = [0] + [sum(rk[i] * rl[n - 1 - i] for i in range(len(rk)) if 0 <= n - 1 - i < len(rl))
                      for n in range(1, len(got))]
    return got == expected


def _random_cycle(rng, K, p):
    """{face: coefficient} of a random cycle; reduced (coefficient sum 0) in degree 0."""
    d = rng.randint(0, K.dim)
    if d == 0:
        if K.face_count(0) < 2:
            return {}
        u, v = rng.sample(K.faces(0), 2)
        x = rng.randint(1, p - 1)
        return {u: x, v: (-x) % p}
    vec = FpVector(p, K.face_count(d))
    for z in boundary_matrix(K, d, p).kernel_basis():
        vec = vec + z.scale(rng.randint(0, p - 1))
    cells = K.faces(d)
    return {cells[i]: value for i, value in vec.entries.items()}


def _join_cycles(rng, p):
    K = random_complex(rng, rng.randint(2, 5), max_faces=3)
    L = random_complex(rng, rng.randint(2, 5), max_faces=3)
    c, d = _random_cycle(rng, K, p), _random_cycle(rng, L, p)
    if not c or not d:
        return True
    J = join(K, L)
    degree = len(next(iter(c))) + len(next(iter(d))) - 1
    joined = cycle_join(K, L, J, c, d, p)
    return not joined.is_zero() and chain_boundary(J, degree, joined).is_zero()


def _properties(seed):
    return [
        ("δ² = 0", lambda: _count_failures(seed, _delta_squared)),
        ("Leibniz rule", lambda: _count_failures(seed + 1000, _leibniz)),
        ("graded commutativity", lambda: _count_failures(seed + 2000, _graded_commutative)),
        ("monotone class vanishing", lambda: _count_failures(seed + 3000, _monotone_vanishing)),
        ("subdivision invariance", lambda: _count_failures(seed + 4000, _subdivision_invariant)),
        ("Künneth dims", lambda: _count_failures(seed + 5000, _kunneth)),
        ("join dims", lambda: _count_failures(seed + 6000, _milnor_join)),
        ("join of cycles", lambda: _count_failures(seed + 7000, _join_cycles)),
    ]


SUITES = {
    "indexes": _indexes,
    "join-p2": _join_p2,
    "product-p2": _product_p2,
    "odd-p": _odd_p,
    "approximation": _approximation,
    "smith": _smith,
    "graphs": _graphs,
    "hypergraphs": _hypergraphs,
    "properties": _properties,
}


# ─────────────────────────────────────────────
# Runner
# ─────────────────────────────────────────────

def list_checks(name, seed=None):
    """[(qualified check name, callable)] for a suite or for "all"."""
    seed = config.seed if seed is None else seed
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise UnknownSuite(f"unknown suite '{name}' (known: {', '.join(list(SUITES) + ['all'])})")
    return [(f"{suite}/{check}", fn) for suite in names for check, fn in SUITES[suite](seed)]


def _run_check(name, fn):
    start = time.time()
    try:
        row = fn()
    except CapExceeded as e:
        row = CheckRow("within caps", str(e), False, skipped=True)
    except HindlabError as e:
        row = CheckRow("no error", type(e).__name__, False)
        detail = e.describe()
    except Exception as e:
        row = CheckRow("no error", f"{type(e).__name__}: {e}", False)
        detail = f"unexpected error: {e}"
    else:
        detail = f"expected {row.expected}, got {row.got}"
    row.name = name
    row.elapsed = time.time() - start
    if not row.passed and not row.skipped:
        log_failure(name, "verification", detail)
    return row


def run_suite(name, seed=None, should_stop=lambda: False):
    """Run every check of a suite; rows keep registration order."""
    checks = list_checks(name, seed)
    suite_stats.start_suite(name, len(checks))
    rows = []
    interrupted = False
    executor = ThreadPoolExecutor(max_workers=config.max_workers)
    try:
        futures = [executor.submit(_run_check, check, fn) for check, fn in checks]
        iterator = tqdm(futures, desc=f"🧪 {name}", unit="check") if config.verbose else futures
        for future in iterator:
            if should_stop():
                interrupted = True
                executor.shutdown(wait=False, cancel_futures=True)
                break
            row = future.result()
            rows.append(row)
            if row.skipped:
                suite_stats.record_skip(f"{row.name}: {row.got}")
            elif row.passed:
                suite_stats.record_pass(row.elapsed)
            else:
                suite_stats.record_failure(row.elapsed)
            log_info(f"{row.name}: {'skipped' if row.skipped else 'ok' if row.passed else 'FAILED'} "
                     f"in {row.elapsed:.2f}s", "🧪")
    finally:
        executor.shutdown(wait=True)
    return SuiteResult(name, rows, interrupted)
