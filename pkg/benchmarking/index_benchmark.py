#!/usr/bin/env python3
"""
Index Benchmark
Times hind on the model actions E_kG, the antipodal spheres and the box
complexes of two odd cycles and the Petersen graph, with the same
regularize → quotient → class scan pipeline the main script uses.
Also times product hind of E_k x E_{k+1} on the cellular product model.
Compares the orbit and simplicial quotient models with --all.

Usage:
    python benchmarking/index_benchmark.py --p 3 --max-k 3
    python benchmarking/index_benchmark.py --p 2 --max-k 4 --all
"""

import os
import sys
import time
import argparse
from datetime import datetime

# Allow imports from project root
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import config
from helpers.actions import e_k_g, sphere_action
from helpers.errors import HindlabError
from helpers.graphs import box_complex, cycle, kneser_graph
from helpers.index import hind, product_hind

BOX_CASES = [
    ("B(C5)", lambda: cycle(5)),
    ("B(C7)", lambda: cycle(7)),
    ("B(KG(5,2))", lambda: kneser_graph(5, 2)),
]


def run_benchmark(label, build, model, verbose):
    config.quotient_model = model
    start = time.time()
    action = build()
    t_build = time.time() - start

    start = time.time()
    report = hind(action)
    t_hind = time.time() - start

    cells = report.quotient.quotient.f_vector()
    print(f"  {label:<14} hind={report.hind:<3} faces={sum(action.complex.f_vector()):<7} "
          f"cells={sum(cells):<7} build {t_build:.2f}s  hind {t_hind:.2f}s")
    if verbose:
        print(f"    f-vector {action.complex.f_vector()}  quotient cells {cells}")
    return t_build + t_hind


def run_product_benchmark(p, k, verbose):
    start = time.time()
    value = product_hind(e_k_g(p, k), e_k_g(p, k + 1))
    t_product = time.time() - start
    print(f"  {f'E_{k} x E_{k + 1}':<14} hind={str(value):<3} product cells {t_product:.2f}s")
    if verbose:
        print(f"    expected {k}")
    return t_product


def run_series(p, max_k, model, verbose):
    print(f"\n[{model}] quotient model")
    total = 0.0
    for k in range(max_k + 1):
        try:
            total += run_benchmark(f"E_{k}(Z/{p})", lambda k=k: e_k_g(p, k), model, verbose)
        except HindlabError as e:
            print(f"  E_{k}(Z/{p}) failed: {e.describe()}")
    if p == 2:
        for n in range(1, max_k + 1):
            try:
                total += run_benchmark(f"S^{n}", lambda n=n: sphere_action(n), model, verbose)
            except HindlabError as e:
                print(f"  S^{n} failed: {e.describe()}")
        for label, graph in BOX_CASES:
            try:
                total += run_benchmark(label, lambda graph=graph: box_complex(graph()),
                                       model, verbose)
            except HindlabError as e:
                print(f"  {label} failed: {e.describe()}")
    for k in range(max_k):
        try:
            total += run_product_benchmark(p, k, verbose)
        except HindlabError as e:
            print(f"  E_{k} x E_{k + 1} failed: {e.describe()}")
    print(f"  Total: {total:.2f}s")
    return total


def main():
    parser = argparse.ArgumentParser(
        description='Homological index benchmark: mirrors the hind pipeline of the main script'
    )
    parser.add_argument('--p',       type=int, default=config.default_p,
                        help=f'Prime order of the group (default: {config.default_p})')
    parser.add_argument('--max-k',   type=int, default=3, help='Largest k of E_kG to time (default: 3)')
    parser.add_argument('--model',   choices=['orbit', 'simplicial'], default=config.quotient_model,
                        help=f'Quotient model (default: {config.quotient_model})')
    parser.add_argument('--all',     action='store_true', help='Benchmark both quotient models and compare')
    parser.add_argument('--verbose', action='store_true', help='Show f-vectors of complex and quotient')
    args = parser.parse_args()

    if args.max_k < 0:
        print(f"--max-k must be at least 0 (got {args.max_k})")
        sys.exit(1)

    print(f"\n{'='*60}")
    print(f"Index Benchmark  —  {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print(f"Group:     Z/{args.p}")
    print(f"Range:     E_0 .. E_{args.max_k}")
    print(f"Caps:      dim {config.dim_cap}, faces {config.face_cap}")
    print(f"{'='*60}")

    if args.all:
        results = {model: run_series(args.p, args.max_k, model, args.verbose)
                   for model in ('orbit', 'simplicial')}
        print(f"\n{'='*60}")
        print("Comparison:")
        for name, t in sorted(results.items(), key=lambda x: x[1]):
            print(f"  {name:<12} {t:.2f}s")
        print(f"{'='*60}")
    else:
        run_series(args.p, args.max_k, args.model, args.verbose)


if __name__ == '__main__':
    main()
