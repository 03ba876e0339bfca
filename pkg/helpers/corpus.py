# helpers/corpus.py
#
# Seeded instance generation. Everything random in the repo draws from Lcg, so
# one seed gives the same complexes, graphs and posets on every platform.

import itertools

from helpers.actions import validate_action
from helpers.cohomology import Cochain
from helpers.complexes import GPoset, from_maximal_faces
from helpers.graphs import Graph
from helpers.hypergraphs import Hypergraph, validate_poset_action

_MULTIPLIER = 1103515245
_INCREMENT = 12345
_MODULUS = 2 ** 31


class Lcg:
    """x ← (1103515245·x + 12345) mod 2³¹; draws use bits 16..30 as in the classic C rand()."""

    def __init__(self, seed):
        self.state = int(seed) % _MODULUS

    def next_int(self):
        self.state = (_MULTIPLIER * self.state + _INCREMENT) % _MODULUS
        return self.state >> 16

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi], both ends included."""
        return lo + self.next_int() % (hi - lo + 1)

    def coin(self, numerator, denominator):
        return self.next_int() % denominator < numerator

    def shuffle(self, items):
        for i in range(len(items) - 1, 0, -1):
            j = self.randint(0, i)
            items[i], items[j] = items[j], items[i]
        return items

    def sample(self, items, k):
        pool = list(items)
        self.shuffle(pool)
        return pool[:k]


def random_graph(rng, n, numerator=1, denominator=2):
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.coin(numerator, denominator)]
    return Graph.from_edges(n, edges)


def random_complex(rng, n, numerator=1, denominator=2, max_faces=None):
    """Downward closure of up to max_faces random vertex subsets of [n]."""
    count = rng.randint(1, max_faces or n)
    maximal = []
    for _ in range(count):
        face = [v for v in range(n) if rng.coin(numerator, denominator)]
        maximal.append(face or [rng.randint(0, n - 1)])
    return from_maximal_faces(range(n), maximal)


def random_free_action(rng, p, orbit_count, numerator=1, denominator=2, max_faces=None):
    """Strongly free Z/p action on vertices i·p + k, generator k ↦ k + 1 inside each orbit.

    Faces pick at most one vertex per orbit and are closed under the action,
    so no translate of a face can meet it.
    """
    n = orbit_count * p
    count = rng.randint(1, max_faces or orbit_count)
    maximal = []
    for _ in range(count):
        face = [i * p + rng.randint(0, p - 1) for i in range(orbit_count) if rng.coin(numerator, denominator)]
        if not face:
            face = [rng.randint(0, n - 1)]
        for k in range(p):
            maximal.append([(v // p) * p + (v % p + k) % p for v in face])
    generator = tuple((v // p) * p + (v % p + 1) % p for v in range(n))
    return validate_action(from_maximal_faces(range(n), maximal), generator, p)


def random_poset_action(rng, p, orbit_count, numerator=1, denominator=3):
    """Free Z/p-poset on elements i·p + k; relations only run from lower to higher orbits."""
    n = orbit_count * p
    covers = []
    for i, j in itertools.combinations(range(orbit_count), 2):
        for shift in range(p):
            if rng.coin(numerator, denominator):
                covers.extend((i * p + k, j * p + (k + shift) % p) for k in range(p))
    generator = tuple((x // p) * p + (x % p + 1) % p for x in range(n))
    return validate_poset_action(GPoset.from_covers(range(n), covers), generator, p)


def random_cochain(rng, model, d, p):
    return Cochain(model, d, p, {cell: rng.randint(0, p - 1) for cell in model.faces(d)})


def random_hypergraph(rng, n, r, numerator=1, denominator=2):
    edges = [e for e in itertools.combinations(range(n), r) if rng.coin(numerator, denominator)]
    return Hypergraph.from_edges(n, edges)
