from spectrum.constants import constants, mu0_between, ordering_holds
from spectrum.markoff import brute_force_markoff, markoff_numbers, spectrum_rows
from utils.evaluator import verdict
from utils.logger import log

# the equation scan is quadratic in the limit; int64 stays exact up to here
BRUTE_FORCE_LIMIT = 10_000


class SpectrumAgent:
    def __init__(self, store):
        self.store = store

    def run(self, config):
        rows = spectrum_rows(config.limit)
        checks = {"ordering": ordering_holds(), "mu0_reference": mu0_between()}
        if config.limit <= BRUTE_FORCE_LIMIT:
            checks["markoff_brute_force"] = brute_force_markoff(config.limit) == markoff_numbers(config.limit)
        log(f"SpectrumAgent: {len(rows)} Markoff numbers up to {config.limit}")

        if config.format == "csv":
            spectrum_path = self.store.add("spectrum.csv", rows, kind="spectrum", columns=["m", "L_exact", "L_decimal"])
        else:
            spectrum_path = self.store.add("spectrum.json", {"limit": config.limit, "rows": rows}, kind="spectrum")
        constants_path = self.store.add("constants.json", [c.to_dict() for c in constants()], kind="constants")
        return {
            "type": "spectrum",
            "status": verdict(checks),
            "response": f"Markoff numbers <= {config.limit}: {[r['m'] for r in rows]}",
            "checks": checks,
            "markoff": [r["m"] for r in rows],
            "artifacts": [spectrum_path, constants_path],
        }
