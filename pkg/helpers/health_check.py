# health_check.py

import os

import config
from helpers.errors import HindlabError


def check_numeric_stack():
    """Verify the numerical libraries import"""
    try:
        import networkx
        import numpy
        import scipy
        return True, (f"numpy {numpy.__version__}, scipy {scipy.__version__}, "
                      f"networkx {networkx.__version__}")
    except ImportError as e:
        return False, f"Missing dependency: {e} — run: pip install -r requirements.txt"


def check_error_log_writable():
    """Verify the failure log can be appended to"""
    path = config.error_log_path
    directory = os.path.dirname(os.path.abspath(path))
    if not os.path.isdir(directory):
        return False, f"Error log directory does not exist: {directory}"
    if os.path.exists(path) and not os.access(path, os.W_OK):
        return False, f"Error log is not writable: {path}"
    if not os.path.exists(path) and not os.access(directory, os.W_OK):
        return False, f"Error log directory is not writable: {directory}"
    return True, f"Error log writable: {path}"


def check_caps():
    """Verify every cap is a positive integer"""
    caps = {name: getattr(config, name) for name in
            ("dim_cap", "vertex_cap", "face_cap", "zhu_size_cap", "zhu_edge_cap")}
    bad = [f"{name}={value}" for name, value in caps.items() if not isinstance(value, int) or value < 1]
    if bad:
        return False, f"Non-positive caps: {', '.join(bad)}"
    if config.quotient_model not in ("orbit", "simplicial"):
        return False, f"Unknown quotient model: {config.quotient_model}"
    return True, ", ".join(f"{name}={value}" for name, value in caps.items())


def check_smoke_index():
    """Compute the index of the antipodal circle"""
    from helpers.actions import sphere_action
    from helpers.index import hind

    value = hind(sphere_action(1)).hind
    if value != 1:
        return False, f"hind(S¹) came out as {value}, expected 1"
    return True, "hind(S¹) = 1"


def check_smoke_product():
    """Compute the index of the circle times the 2-sphere on the product cell model"""
    from helpers.actions import sphere_action
    from helpers.index import product_hind

    value = product_hind(sphere_action(1), sphere_action(2))
    if value != 1:
        return False, f"hind(S¹ × S²) came out as {value}, expected 1"
    return True, "hind(S¹ × S²) = 1"


# Each group runs only when every earlier group passed.
HEALTH_GROUPS = [
    ("Environment", [
        ("Numerical Stack", check_numeric_stack),
        ("Error Log", check_error_log_writable),
        ("Caps", check_caps),
    ]),
    ("Computation", [
        ("Smoke Index", check_smoke_index),
        ("Smoke Product", check_smoke_product),
    ]),
]


def _outcome(check_func):
    try:
        return check_func()
    except HindlabError as e:
        return False, e.describe()
    except Exception as e:
        return False, f"Unexpected error - {e}"


def run_health_check():
    """Run the health groups in order; returns (all passed, [(name, passed, message)])"""
    results = []
    blocked_by = None

    print("\n🏥 Running Health Checks...")
    for group, checks in HEALTH_GROUPS:
        print(f"\n{group}")
        print("-" * 60)
        group_passed = True
        for check_name, check_func in checks:
            if blocked_by is not None:
                passed, message = False, f"skipped, {blocked_by} checks failed"
            else:
                passed, message = _outcome(check_func)
            print(f"{'✅' if passed else '❌'} {check_name}: {message}")
            results.append((check_name, passed, message))
            group_passed = group_passed and passed
        if not group_passed and blocked_by is None:
            blocked_by = group

    print("=" * 60)
    if blocked_by is None:
        print("✅ All health checks passed!\n")
    else:
        print(f"❌ {blocked_by} health checks failed. Please resolve issues before running suites.\n")
    return blocked_by is None, results
