from cfcore.contfrac import CFExpansion
from construction.certificate import Certificate
from memory.artifact_store import read_json
from utils.errors import ExactApproxError, InsufficientDigitsError
from utils.evaluator import error_result, verdict
from utils.logger import log
from verification.recheck import recheck_certificate


class RecheckAgent:
    def __init__(self, store):
        self.store = store

    def run(self, config):
        """Recompute a stored certificate from the stored digits alone."""
        try:
            certificate = Certificate.from_dict(read_json(config.certificate))
            alpha = CFExpansion.from_dict(read_json(config.alpha))
            result = recheck_certificate(certificate, alpha)
        except ExactApproxError as e:
            log(f"RecheckAgent: {e}", "warning")
            return error_result("recheck", e, needs_more=(InsufficientDigitsError,))

        checks = {"recheck": result.ok}
        path = self.store.add("recheck.json", result.to_dict(), kind="recheck")
        if result.ok:
            response = f"all {result.checked} entries re-validated"
        else:
            first = result.first_failure
            response = f"{len(result.failures)} failures over {result.checked} entries; first at n={first['n']}: {first['reason']}"
        log(f"RecheckAgent: {response}")
        return {"type": "recheck", "status": verdict(checks), "response": response, "checks": checks, "artifacts": [path]}
