from cantorsum.decompose import decompose
from cantorsum.digits import system_by_name
from cfcore.exact import exact_record
from cfcore.interval import format_fraction
from utils.errors import DepthExceededError, ExactApproxError, StreamExhaustedError
from utils.evaluator import error_result, verdict
from utils.logger import log


class DecomposeAgent:
    def __init__(self, store):
        self.store = store

    def run(self, config):
        """Split config.target into two digit strings of config.system."""
        try:
            system = system_by_name(config.system)
            result = decompose(config.target, system, config.width_goal, depth_cap=config.depth_cap)
        except ExactApproxError as e:
            log(f"DecomposeAgent: {e}", "warning")
            return error_result("decompose", e, needs_more=(DepthExceededError, StreamExhaustedError))

        width = result.sum_interval.width()
        checks = {"contains_target": result.verify(config.target, system), "width_goal": width < config.width_goal}
        log(f"DecomposeAgent: {len(result.b)} + {len(result.c)} digits, width {float(width):.3e}")
        payload = {
            "target": exact_record(config.target),
            "system": system.name,
            "b": list(result.b),
            "c": list(result.c),
            "sum_interval": result.sum_interval.as_strings(),
            "width": format_fraction(width),
            "steps": result.steps,
            "checks": checks,
        }
        path = self.store.add("decomposition.json", payload, kind="decomposition")
        return {
            "type": "decompose",
            "status": verdict(checks),
            "response": f"{system.name} digits found to depth {max(len(result.b), len(result.c))}",
            "checks": checks,
            "artifacts": [path],
        }
