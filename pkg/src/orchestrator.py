# orchestrator.py: ExactApprox orchestrator (subcommand routing + JSON run envelope)
import argparse
import asyncio
import sys
import traceback
from datetime import datetime

import ujson

from agents.construct_agent import ConstructAgent
from agents.decompose_agent import DecomposeAgent
from agents.recheck_agent import RecheckAgent
from agents.spectrum_agent import SpectrumAgent
from agents.verify_agent import VerifyAgent
from cantorsum.digits import validate_registry
from memory.artifact_store import ArtifactStore
from memory.session import RunSession
from utils.config import RunConfig
from utils.errors import ExactApproxError
from utils.evaluator import evaluate
from utils.logger import log as external_log


class ExactApproxOrchestrator:
    def __init__(self, out_dir="out", argv=None):
        # raises DigitSystemError when a named digit system outgrows MAX_EXTREMAL_PERIOD
        self.registry = validate_registry()
        self.store = ArtifactStore(out_dir)
        self.session = RunSession(argv)
        self.agents = {
            "decompose": DecomposeAgent(self.store),
            "construct": ConstructAgent(self.store),
            "verify": VerifyAgent(self.store),
            "spectrum": SpectrumAgent(self.store),
            "recheck": RecheckAgent(self.store),
        }
        self._logs = []

    def _log(self, msg: str):
        ts = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
        entry = f"[{ts}] {msg}"
        self._logs.append(entry)
        self.session.add_interaction(msg)
        try:
            external_log(entry)
        except Exception:
            pass

    async def handle_request(self, config: RunConfig):
        try:
            self._log(f"START {config.command}")
            agent = self.agents.get(config.command)
            if agent is None:
                return {"type": "unknown", "status": "failed", "response": f"unknown command {config.command!r}"}
            result = agent.run(config)
            # verify scans q-partitions concurrently and hands back a coroutine
            if asyncio.iscoroutine(result):
                result = await result
            self._log(f"{config.command}: {result.get('status')}: {result.get('response')}")
            return result
        except Exception as e:
            tb = traceback.format_exc()
            self._log(f"Unhandled exception in orchestrator: {e}")
            error = {"type": "error", "status": "failed", "response": str(e), "traceback": tb}
            if isinstance(e, ExactApproxError):
                error["details"] = e.details
            return error

    async def run_and_print(self, config: RunConfig):
        result = await self.handle_request(config)
        rc = evaluate(result)
        session = self.session.finish()
        metadata = {
            **self.session.metadata(self._logs),
            "config": config.to_dict(),
            "exit_code": rc,
            "artifacts": self.store.paths(),
            "digit_systems": self.registry,
        }
        self.store.add("metadata.json", metadata, kind="metadata")
        output = {"metadata": {"command": config.command, "out": self.store.out_dir, "started": session["started"]}, "logs": self._logs, "result": result}
        print(ujson.dumps(output, ensure_ascii=False, indent=2, escape_forward_slashes=False))
        return rc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="ExactApprox: exact-arithmetic constructions for approximation constants")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        # flags default to None so --config values survive unless overridden
        p.add_argument("--config", type=str, help="JSON file with RunConfig keys; flags override it")
        p.add_argument("--out", type=str, help="Output directory (EXACTAPPROX_OUT_DIR overrides)")
        return p

    p = command("decompose", "Split a target into two digit strings of a restricted system")
    p.add_argument("--target", type=str, help="Exact value: p/q, decimal, P,D,Q or a named constant")
    p.add_argument("--system", type=str, help="F_3, F_4, FJ or F_<k>")
    p.add_argument("--width-goal", dest="width_goal", type=str, help="Stop once the sum interval is this narrow")
    p.add_argument("--depth-cap", dest="depth_cap", type=int)

    p = command("construct", "Build alpha and its certificate for gamma")
    p.add_argument("--gamma", type=str)
    p.add_argument("--pad", type=str, help="log[:s], power:a/b or table:<path>")
    p.add_argument("--mode", choices=["one", "two"])
    p.add_argument("--blocks", type=int)
    p.add_argument("--lookahead", type=int, help="Largest block size tried before giving up")

    p = command("verify", "Enumerate solutions of the inequality for a stored alpha")
    p.add_argument("--alpha", type=str, help="alpha.json written by construct")
    p.add_argument("--certificate", type=str, help="Optional certificate.json to cross-check against")
    p.add_argument("--gamma", type=str)
    p.add_argument("--pad", type=str)
    p.add_argument("--sign", choices=["plus", "minus", "none"])
    p.add_argument("--Q", type=int)
    p.add_argument("--workers", type=int)

    p = command("spectrum", "Markoff numbers, L values and named constants")
    p.add_argument("--limit", type=int)
    p.add_argument("--format", choices=["json", "csv"])

    p = command("recheck", "Re-validate a certificate from its digits")
    p.add_argument("--certificate", type=str)
    p.add_argument("--alpha", type=str)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    async def _main():
        try:
            config = RunConfig.from_args(args)
        except ExactApproxError as e:
            external_log(f"Invalid configuration: {e}", "error")
            print(ujson.dumps({"metadata": {"command": args.command}, "logs": [f"fatal: {e}"], "result": {"type": "error", "status": "failed", "response": str(e), "details": e.details}}, ensure_ascii=False, indent=2))
            return 1
        try:
            orchestrator = ExactApproxOrchestrator(config.out, argv if argv is not None else sys.argv)
            return await orchestrator.run_and_print(config)
        except Exception as e:
            tb = traceback.format_exc()
            external_log(f"Orchestrator fatal error: {e}\n{tb}", "error")
            print(ujson.dumps({
                "metadata": {"command": config.command},
                "logs": [f"fatal: {e}"],
                "result": {"type": "error", "status": "failed", "response": str(e), "traceback": tb},
            }, ensure_ascii=False, indent=2))
            return 1

    return asyncio.run(_main())


if __name__ == "__main__":
    sys.exit(main())
