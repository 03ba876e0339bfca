# errors.py
#
# Every failure the library can report. The CLI maps exit_code straight to
# the process exit status: 1 usage/parse, 2 validation, 3 cap.


class HindlabError(Exception):
    exit_code = 2

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness

    def describe(self):
        if self.witness is None:
            return str(self)
        return f"{self} (witness: {self.witness})"


# ─────────────────────────────────────────────
# Usage / parse (exit 1)
# ─────────────────────────────────────────────

class ParseError(HindlabError):
    exit_code = 1


class UnknownSuite(HindlabError):
    exit_code = 1


# ─────────────────────────────────────────────
# Validation (exit 2)
# ─────────────────────────────────────────────

class InvalidComplex(HindlabError):
    pass


class EmptyComplex(HindlabError):
    pass


class InvalidPoset(HindlabError):
    pass


class NotAPrime(HindlabError):
    pass


class DimensionMismatch(HindlabError):
    pass


class NotSimplicial(HindlabError):
    pass


class WrongOrder(HindlabError):
    pass


class NotFree(HindlabError):
    pass


class StillIrregular(HindlabError):
    pass


class PMismatch(HindlabError):
    pass


class NotACocycle(HindlabError):
    pass


class ComplexMismatch(HindlabError):
    pass


class TargetMismatch(HindlabError):
    pass


class NotUniform(HindlabError):
    pass


class BadR(HindlabError):
    pass


class NotProperColoring(HindlabError):
    pass


class BadCertificate(HindlabError):
    pass


class BadParams(HindlabError):
    pass


class MonotonicityError(HindlabError):
    """A characteristic class reappeared after vanishing; signals a defect in the cochain code."""


# ─────────────────────────────────────────────
# Caps (exit 3)
# ─────────────────────────────────────────────

class CapExceeded(HindlabError):
    exit_code = 3

    def __init__(self, cap_name, limit, observed):
        super().__init__(f"{cap_name} exceeded: {observed} > {limit}")
        self.cap_name = cap_name
        self.limit = limit
        self.observed = observed
