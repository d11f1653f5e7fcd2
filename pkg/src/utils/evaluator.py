PASSED = "passed"
UNDECIDED = "undecided"
FAILED = "failed"

EXIT_CODES = {PASSED: 0, UNDECIDED: 2, FAILED: 1}


def verdict(checks):
    """Fold a mapping of check name -> True / False / None (undecided) into one status."""
    values = list(checks.values())
    if any(v is False for v in values):
        return FAILED
    if any(v is None for v in values):
        return UNDECIDED
    return PASSED


def evaluate(result):
    if not isinstance(result, dict) or result.get("type") == "error":
        return 1
    return EXIT_CODES.get(result.get("status"), 1)


def error_result(kind, exc, needs_more=()):
    """Agent-level envelope for a domain error; ``needs_more`` errors count as undecided."""
    return {
        "type": kind,
        "status": UNDECIDED if isinstance(exc, tuple(needs_more)) else FAILED,
        "response": str(exc),
        "error": type(exc).__name__,
        "details": getattr(exc, "details", {}),
    }
