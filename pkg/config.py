# config.py

import os
import sys

# ─────────────────────────────────────────────
# Algebra Defaults
# ─────────────────────────────────────────────
default_p = 2   # --p: Prime order of the acting group when the input does not fix one
default_r = 2   # --r: Edge size used for compatibility hypergraphs and B_edge

# ─────────────────────────────────────────────
# Caps (desk-scale guards)
# ─────────────────────────────────────────────
dim_cap           = 12       # --dim-cap:     Largest face dimension any constructor will enumerate
vertex_cap        = 24       # --vertex-cap:  Largest vertex count handed to the coloring oracles
face_cap          = 200000   # Largest face count of an enumerated complex (order complexes, B_edge)
zhu_size_cap      = 6        # Largest edge size enumerated in a hypergraph categorical product
zhu_edge_cap      = 200000   # Largest edge count of a hypergraph categorical product
regularize_rounds = 2        # Barycentric subdivisions attempted before giving up on an action

# ─────────────────────────────────────────────
# Quotient Model
# ─────────────────────────────────────────────
quotient_model = "orbit"     # --quotient-model: "orbit"      (cells are face orbits, needs vertex-disjoint orbits only)
                             #                   "simplicial" (also demands a simplicial quotient, subdividing if needed)

# ─────────────────────────────────────────────
# Output
# ─────────────────────────────────────────────
output_format = "json"       # --format: "json" or "tsv"

# ─────────────────────────────────────────────
# Randomized Corpus
# ─────────────────────────────────────────────
seed                = 20240611  # --seed: Seed of the linear-congruential corpus generator
random_graph_count  = 50        # Graphs drawn for the h-χ ≤ χ soundness check
property_cases      = 200       # Cases drawn per structural property check
random_max_vertices = 8         # Vertex bound for random complexes in property checks

# ─────────────────────────────────────────────
# Processing Settings
# ─────────────────────────────────────────────
error_log_path   = "hindlab_errors.txt"  # Path for the failure log
error_log_max_mb = 10                    # Rotate the failure log when it exceeds this size in MB (0 = no rotation)

max_workers = 4      # --max-workers: Number of threads used by verification suites
verbose     = False  # --verbose:     Display progress bars and per-check timings
debug       = False  # --debug:       Enable debug output including matrix sizes and regularization steps

# ─────────────────────────────────────────────
# CI Override
# ─────────────────────────────────────────────
# HINDLAB_CAP_OVERRIDE="30" raises vertex_cap to 30;
# HINDLAB_CAP_OVERRIDE="vertex_cap=30,face_cap=500000" sets several caps at once.
_OVERRIDABLE = ("vertex_cap", "dim_cap", "face_cap", "zhu_size_cap")


def _apply_cap_override(raw):
    if not raw:
        return
    module = sys.modules[__name__]
    raw = raw.strip()
    try:
        if raw.isdigit():
            setattr(module, "vertex_cap", int(raw))
            return
        for item in raw.split(","):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in _OVERRIDABLE or not value.strip().isdigit():
                raise ValueError(item)
            setattr(module, key, int(value))
    except ValueError as e:
        print(f"⚠️ Ignoring malformed HINDLAB_CAP_OVERRIDE entry: {e}", file=sys.stderr)


_apply_cap_override(os.environ.get("HINDLAB_CAP_OVERRIDE"))
