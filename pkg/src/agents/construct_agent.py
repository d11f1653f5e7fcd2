# agents/construct_agent.py
"""
ConstructAgent: builds alpha block by block for the configured gamma and pad,
re-checks the certificate from the emitted digits and stores three artifacts:

- alpha.json          the digits and the tail description
- certificate.json    per-index lambda classes
- construction.json   parameters, block records and the gamma representation
"""

from construction.blocks import WITH_C
from construction.builder import construct
from utils.errors import DepthExceededError, ExactApproxError, StreamExhaustedError
from utils.evaluator import error_result, verdict
from utils.logger import log
from verification.lagrange import strengthened_check
from verification.recheck import recheck_certificate


class ConstructAgent:
    def __init__(self, store):
        self.store = store

    def run(self, config):
        log(f"ConstructAgent: gamma={config.to_dict()['gamma']} mode={config.mode} pad={config.pad} blocks={config.blocks}")
        try:
            result = construct(config.gamma, config.pad_function, config.mode, config.blocks, config.lookahead)
        except ExactApproxError as e:
            log(f"ConstructAgent: construction stopped: {e}", "warning")
            return error_result("construct", e, needs_more=(DepthExceededError, StreamExhaustedError))

        for block in result.state.blocks:
            log(f"ConstructAgent: block {block.index} m={block.m} n={block.n} k={block.k}")
        certificate = result.certificate
        recheck = recheck_certificate(certificate, result.alpha)
        checks = {"recheck": recheck.ok}
        strengthened = None
        if result.params.spec.layout == WITH_C:
            strengthened = strengthened_check(certificate, result.alpha)
            checks["strengthened"] = strengthened["ok"]

        artifacts = [
            self.store.add("alpha.json", result.alpha.to_dict(), kind="alpha"),
            self.store.add("certificate.json", certificate.to_dict(), kind="certificate"),
            self.store.add("construction.json", {**result.to_dict(), "checks": checks, "strengthened": strengthened}, kind="construction"),
        ]
        summary = certificate.summary()
        return {
            "type": "construct",
            "status": verdict(checks),
            "response": (
                f"{len(result.alpha.digits)} digits, marked indices {summary['marked']}, "
                f"{summary['undecided']} trailing indices left open beyond q={summary['q_cover']}"
            ),
            "checks": checks,
            "certificate": summary,
            "artifacts": artifacts,
        }
