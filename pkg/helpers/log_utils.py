# log_utils.py

import os
import sys
import threading
from datetime import datetime

import config

# Thread-safe failure logging
error_log_lock = threading.Lock()


def _timestamp():
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")


def _emit(msg):
    # Reports own stdout; everything here goes to stderr.
    try:
        print(msg, file=sys.stderr)
    except UnicodeEncodeError:
        print(msg.encode('utf-8', errors='replace').decode('ascii', errors='replace'), file=sys.stderr)


def _rotate_log_if_needed():
    """Rotate config.error_log_path if it exceeds config.error_log_max_mb. Called inside error_log_lock."""
    if config.error_log_max_mb <= 0:
        return
    path = config.error_log_path
    try:
        if os.path.exists(path) and os.path.getsize(path) > config.error_log_max_mb * 1024 * 1024:
            rotated = path + ".1"
            if os.path.exists(rotated):
                os.remove(rotated)
            os.rename(path, rotated)
    except OSError:
        pass  # Rotation failure is non-fatal


def log_info(msg, emoji="ℹ️"):
    if config.verbose:
        _emit(f"[{_timestamp()}] {emoji} {msg}")


def log_debug(msg):
    if config.debug:
        _emit(f"🟡 [DEBUG] {msg}")


def log_warning(msg):
    _emit(f"[{_timestamp()}] ⚠️ {msg}")


def log_failure(subject, step, error):
    """Print a failure line and append it to the error log."""
    timestamp = _timestamp()
    _emit(f"{timestamp} ❌ {subject} failed during {step}: {error}")
    try:
        with error_log_lock:
            _rotate_log_if_needed()
            with open(config.error_log_path, "a", encoding="utf-8") as log:
                log.write(f"[{timestamp}] {subject} — {step}: {error}\n")
    except OSError as log_err:
        _emit(f"⚠️ Failed to write {config.error_log_path}: {log_err}")
