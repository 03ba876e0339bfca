# hindlab_main.py

import argparse
import signal
import sys
import threading
from dataclasses import dataclass

import config
from helpers.errors import BadR, HindlabError, ParseError
from helpers.formats import encode, read_document
from helpers.health_check import run_health_check
from helpers.log_utils import log_info
from helpers.statistics import suite_stats

# Global shutdown flag and event for signal handling
shutdown_requested = False
shutdown_event = threading.Event()

COMMANDS = ("hind", "verify", "graph-bound", "hyper-bound")


@dataclass
class RunConfig:
    command: str
    input_path: str = None
    p: int = 2
    r: int = 2
    dim_cap: int = None
    vertex_cap: int = None
    output_format: str = "json"
    seed: int = None
    suite: str = "all"


class HindlabArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with status 1, matching parse errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ {self.prog}: {message}", file=sys.stderr)
        sys.exit(1)


def _positive(name, value):
    if value is not None and value < 1:
        print(f"❌ {name} must be at least 1 (got {value})", file=sys.stderr)
        sys.exit(1)


def apply_cli_args(args):
    """Push flags into config and return the RunConfig for this invocation."""
    _positive("--dim-cap", args.dim_cap)
    _positive("--vertex-cap", args.vertex_cap)
    _positive("--max-workers", args.max_workers)
    if args.dim_cap:
        config.dim_cap = args.dim_cap
    if args.vertex_cap:
        config.vertex_cap = args.vertex_cap
    if args.max_workers:
        config.max_workers = args.max_workers
    if args.format:
        config.output_format = args.format
    if args.seed is not None:
        config.seed = args.seed
    if args.quotient_model:
        config.quotient_model = args.quotient_model
    config.verbose = args.verbose
    config.debug = args.debug

    # B_edge of an r-uniform hypergraph carries a Z/r action: one flag sets both
    p = args.p or args.r or config.default_p
    r = args.r or args.p or config.default_r
    return RunConfig(
        command=args.command,
        input_path=args.input,
        p=p,
        r=r,
        dim_cap=config.dim_cap,
        vertex_cap=config.vertex_cap,
        output_format=config.output_format,
        seed=config.seed,
        suite=args.suite or "all",
    )


def signal_handler(signum, frame):
    """Handle termination signals gracefully"""
    global shutdown_requested
    signal_name = "SIGTERM" if signum == signal.SIGTERM else "SIGINT"
    print(f"\n🛑 Received {signal_name}. Finishing the running checks...", file=sys.stderr)
    shutdown_requested = True
    shutdown_event.set()


def _require_input(run):
    if not run.input_path:
        raise ParseError(f"command '{run.command}' needs an input file")
    return run.input_path


# ─────────────────────────────────────────────
# Commands
# ─────────────────────────────────────────────

def cmd_hind(run):
    from helpers.index import hind

    action = read_document(_require_input(run), "action")
    log_info(f"Computing hind of a Z/{action.p} action on f={action.complex.f_vector()}", "🧮")
    print(encode(hind(action).to_json(), run.output_format))
    return 0


def cmd_verify(run):
    from helpers.suites import run_suite

    result = run_suite(run.suite, run.seed, should_stop=lambda: shutdown_requested)
    rows = [row.to_json() for row in result.rows]
    if run.output_format == "tsv":
        print(encode(rows, "tsv"))
    else:
        print(encode({"passed": result.passed, "rows": rows, "suite": result.suite}, "json"))
    print(suite_stats.get_summary(), file=sys.stderr)
    if result.interrupted:
        print("🛑 Suite interrupted; the table above is partial.", file=sys.stderr)
    return 0 if result.passed else 2


def cmd_graph_bound(run):
    from helpers.graphs import chromatic_number, homological_chromatic_number

    H = read_document(_require_input(run), "graph")
    chi = chromatic_number(H)
    h_chi = homological_chromatic_number(H)
    print(encode({"chi": chi, "gap": chi - h_chi, "h_chi": h_chi}, run.output_format))
    return 0


def cmd_hyper_bound(run):
    from helpers.hypergraphs import INFINITE, afl_bound, hyper_chromatic_number

    if run.p != run.r:
        raise BadR(f"the edge complex of an r-uniform hypergraph needs p = r, got p={run.p}, r={run.r}")
    H = read_document(_require_input(run), "hypergraph")
    bound = afl_bound(H, run.p)
    chi = hyper_chromatic_number(H)
    report = {"afl_bound": bound, "p": run.p}
    if chi == INFINITE:
        report.update(chi="infinite", gap="infinite")
    else:
        report.update(chi=chi, gap=chi - bound)
    print(encode(report, run.output_format))
    return 0


HANDLERS = {
    "hind": cmd_hind,
    "verify": cmd_verify,
    "graph-bound": cmd_graph_bound,
    "hyper-bound": cmd_hyper_bound,
}


def build_parser():
    parser = HindlabArgumentParser(
        description=(
            "Homological index of free Z/p actions on finite simplicial complexes.\n\n"
            "Computes hind from the characteristic classes of the quotient, checks the\n"
            "join and product formulas, and turns the index into chromatic lower bounds\n"
            "for graphs (box complex) and hypergraphs (edge complex)."
        ),
        epilog="""
Index of an action given as JSON:
  python %(prog)s hind sphere2.json

Run a verification suite (or all of them) with a fixed corpus seed:
  python %(prog)s verify --suite join-p2
  python %(prog)s verify --suite all --seed 7 --max-workers 8 --verbose

Chromatic bounds:
  python %(prog)s graph-bound petersen.json
  python %(prog)s hyper-bound kneser-5-1-3.json --p 3

Other useful options:
  python %(prog)s verify --suite smith --format tsv
  python %(prog)s hind big.json --dim-cap 16 --quotient-model simplicial --debug
  python %(prog)s --health-check
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter
    )

    parser.add_argument("--version", action="version", version="%(prog)s 1.0.0")
    parser.add_argument("command", nargs="?", choices=COMMANDS, help="What to run")
    parser.add_argument("input", nargs="?", help="JSON input file (action, graph or hypergraph)")

    # Algebra
    algebra = parser.add_argument_group('Algebra')
    algebra.add_argument("--p", type=int, help="Prime order of the acting group (default: 2)")
    algebra.add_argument("--r", type=int, help="Edge size of the hypergraph; the edge complex needs r = p (default: 2)")
    algebra.add_argument("--quotient-model", choices=["orbit", "simplicial"],
                         help="Cell model of the quotient (default: orbit)")

    # Caps
    caps = parser.add_argument_group('Caps', 'Instances beyond a cap exit with status 3')
    caps.add_argument("--dim-cap", type=int, help="Largest face dimension enumerated (default: 12)")
    caps.add_argument("--vertex-cap", type=int, help="Largest vertex count given to the coloring oracles (default: 24)")

    # Verification
    verification = parser.add_argument_group('Verification')
    verification.add_argument("--suite", type=str,
                              help="Suite for 'verify': indexes, join-p2, product-p2, odd-p, approximation, "
                                   "smith, graphs, hypergraphs, properties or all (default: all)")
    verification.add_argument("--seed", type=int, help="Seed of the random corpus (default: 20240611)")
    verification.add_argument("--max-workers", type=int, help="Number of threads for suite checks (default: 4)")

    # Output
    output = parser.add_argument_group('Output')
    output.add_argument("--format", choices=["json", "tsv"], help="Report format on stdout (default: json)")
    output.add_argument("--verbose", action="store_true", help="Enable progress bars and per-check timings")
    output.add_argument("--debug", action="store_true", help="Enable debug output including matrix sizes")

    # Utilities
    utilities = parser.add_argument_group('Utilities')
    utilities.add_argument("--health-check", action="store_true", help="Run system health checks and exit")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    run = apply_cli_args(args)

    # Register signal handlers for graceful shutdown
    signal.signal(signal.SIGTERM, signal_handler)
    signal.signal(signal.SIGINT, signal_handler)

    if args.health_check:
        passed, _ = run_health_check()
        return 0 if passed else 1

    if run.command is None:
        parser.error("a command is required: " + ", ".join(COMMANDS))

    try:
        return HANDLERS[run.command](run)
    except HindlabError as e:
        print(f"❌ {type(e).__name__}: {e.describe()}", file=sys.stderr)
        return e.exit_code


if __name__ == '__main__':
    sys.exit(main())
