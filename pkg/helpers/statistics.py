# statistics.py

import time
import threading


class SuiteStatistics:
    """Thread-safe tally of verification checks"""

    def __init__(self):
        self.lock = threading.Lock()
        self.suite = None
        self.total_checks = 0
        self.passed = 0
        self.failed = 0
        self.skipped = 0
        self.start_time = None
        self.check_times = []
        self.skip_reasons = []

    def start_suite(self, suite, total_checks):
        """Reset counters for a new suite run"""
        with self.lock:
            self.suite = suite
            self.total_checks = total_checks
            self.passed = 0
            self.failed = 0
            self.skipped = 0
            self.start_time = time.time()
            self.check_times = []
            self.skip_reasons = []

    def record_pass(self, elapsed_time=None):
        with self.lock:
            self.passed += 1
            if elapsed_time:
                self.check_times.append(elapsed_time)

    def record_failure(self, elapsed_time=None):
        with self.lock:
            self.failed += 1
            if elapsed_time:
                self.check_times.append(elapsed_time)

    def record_skip(self, reason):
        with self.lock:
            self.skipped += 1
            self.skip_reasons.append(reason)

    def all_passed(self):
        with self.lock:
            return self.failed == 0

    def get_summary(self):
        """Get formatted statistics summary"""
        with self.lock:
            if self.start_time is None:
                return "No statistics available"

            elapsed = time.time() - self.start_time
            decided = self.passed + self.failed
            pass_rate = (self.passed / decided * 100) if decided > 0 else 0
            avg_time = sum(self.check_times) / len(self.check_times) if self.check_times else 0

            lines = [
                "",
                "=" * 60,
                f"📊 Suite Summary: {self.suite}",
                "=" * 60,
                f"  ✅ Passed: {self.passed}/{self.total_checks} ({pass_rate:.1f}% of decided)",
                f"  ❌ Failed: {self.failed}/{self.total_checks}",
                f"  ⏭️  Skipped (caps): {self.skipped}/{self.total_checks}",
                f"  ⏱️  Average time per check: {avg_time:.2f}s",
                f"  🎯 Total time: {self._format_duration(elapsed)}",
                "=" * 60,
                ""
            ]

            return "\n".join(lines)

    def _format_duration(self, seconds):
        if seconds < 60:
            return f"{seconds:.1f}s"
        elif seconds < 3600:
            minutes = int(seconds // 60)
            secs = int(seconds % 60)
            return f"{minutes}m {secs}s"
        else:
            hours = int(seconds // 3600)
            minutes = int((seconds % 3600) // 60)
            return f"{hours}h {minutes}m"


# Global statistics instance
suite_stats = SuiteStatistics()
