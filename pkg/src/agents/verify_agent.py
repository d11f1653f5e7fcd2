from cfcore.contfrac import CFExpansion
from construction.certificate import Certificate
from memory.artifact_store import read_json
from utils.errors import ExactApproxError, InsufficientDigitsError
from utils.evaluator import error_result, verdict
from utils.logger import log
from verification.recheck import certificate_conflicts
from verification.solutions import enumerate_solutions_async


class VerifyAgent:
    def __init__(self, store):
        self.store = store

    async def run(self, config):
        try:
            alpha = CFExpansion.from_dict(read_json(config.alpha))
            pad = config.pad_function if config.sign != "none" else None
            log(f"VerifyAgent: scanning q <= {config.Q} with {config.workers} workers, sign {config.sign}")
            report = await enumerate_solutions_async(alpha, config.gamma, pad, config.sign, config.Q, config.workers)
            certificate = Certificate.from_dict(read_json(config.certificate)) if config.certificate else None
        except ExactApproxError as e:
            log(f"VerifyAgent: {e}", "warning")
            return error_result("verify", e, needs_more=(InsufficientDigitsError,))

        checks = {"decided": None if report.undecided else True}
        conflicts = []
        if certificate is not None:
            conflicts = certificate_conflicts(certificate, alpha, report)
            checks["certificate"] = not conflicts
        log(f"VerifyAgent: {len(report.solutions)} solutions, {len(report.undecided)} undecided denominators")

        artifacts = [
            self.store.add("solutions.json", {**report.to_dict(), "conflicts": conflicts}, kind="solutions"),
            self.store.add("solutions.csv", report.rows(), kind="solutions", columns=["q", "p", "lhs_hi", "rhs_lo", "verdict"]),
        ]
        largest = max(report.denominators, default=None)
        return {
            "type": "verify",
            "status": verdict(checks),
            "response": f"{len(report.solutions)} solutions with q <= {config.Q}; largest q {largest}",
            "checks": checks,
            "solutions": [list(pq) for pq in report.pairs],
            "artifacts": artifacts,
        }
