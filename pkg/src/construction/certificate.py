# construction/certificate.py
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional

from cfcore.contfrac import CFExpansion, denominators, lambda_enclosures
from cfcore.exact import format_exact, parse_exact
from cfcore.interval import RationalInterval, format_fraction
from cfcore.surd import Exact
from construction.blocks import WITH_C, ConstructionParams, ConstructionState
from utils.errors import CertificateError
from utils.logger import get_logger

logger = get_logger("construction.certificate")


class EntryClass(str, Enum):
    MARKED_ABOVE = "marked_above"
    MARKED_BAND = "marked_band"
    BELOW_MARGIN = "below_margin"

    @property
    def marked(self) -> bool:
        return self is not EntryClass.BELOW_MARGIN


@dataclass(frozen=True)
class CertificateEntry:
    n: int
    q_n: int
    lam: RationalInterval
    cls: EntryClass
    block: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "q_n": format_fraction(self.q_n),
            "lambda_lo": format_fraction(self.lam.lo),
            "lambda_hi": format_fraction(self.lam.hi),
            "class": self.cls.value,
            "block": self.block,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CertificateEntry":
        q = Fraction(data["q_n"])
        if q.denominator != 1:
            raise CertificateError(f"entry {data.get('n')}: q_n must be an integer, got {data['q_n']}")
        return cls(
            int(data["n"]),
            q.numerator,
            RationalInterval(Fraction(data["lambda_lo"]), Fraction(data["lambda_hi"])),
            EntryClass(data["class"]),
            int(data["block"]),
        )


@dataclass
class Certificate:
    """Per-index record of which lambda inequality the emitted digits satisfy."""

    gamma: Exact
    mode: str
    pad: str
    epsilon: Exact
    n0: int
    c: int
    layout: Dict[str, Any]
    blocks: List[Dict[str, Any]]
    entries: List[CertificateEntry]
    undecided: List[int] = field(default_factory=list)
    digit_count: int = 0
    q_cover: int = 0

    @property
    def marked(self) -> List[int]:
        return [e.n for e in self.entries if e.cls.marked]

    def undecided_is_suffix(self) -> bool:
        """Open indices, if any, run without a gap up to the last digit."""
        if not self.undecided:
            return True
        return self.undecided == list(range(self.undecided[0], self.digit_count + 1))

    def entry(self, n: int) -> Optional[CertificateEntry]:
        for e in self.entries:
            if e.n == n:
                return e
        return None

    def summary(self) -> Dict[str, Any]:
        counts: Dict[str, int] = {c.value: 0 for c in EntryClass}
        for e in self.entries:
            counts[e.cls.value] += 1
        return {"marked": self.marked, "classes": counts, "undecided": len(self.undecided), "q_cover": str(self.q_cover)}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": format_exact(self.gamma),
            "mode": self.mode,
            "pad": self.pad,
            "epsilon": format_exact(self.epsilon),
            "n0": self.n0,
            "c": self.c,
            "layout": self.layout,
            "blocks": self.blocks,
            "digit_count": self.digit_count,
            "q_cover": str(self.q_cover),
            "entries": [e.to_dict() for e in self.entries],
            "undecided": self.undecided,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Certificate":
        try:
            return cls(
                gamma=parse_exact(data["gamma"]),
                mode=data["mode"],
                pad=data["pad"],
                epsilon=parse_exact(data["epsilon"]),
                n0=int(data.get("n0", 0)),
                c=int(data["c"]),
                layout=dict(data.get("layout", {})),
                blocks=list(data.get("blocks", [])),
                entries=[CertificateEntry.from_dict(e) for e in data["entries"]],
                undecided=[int(n) for n in data.get("undecided", [])],
                digit_count=int(data.get("digit_count", 0)),
                q_cover=int(data.get("q_cover", 0)),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise CertificateError(f"malformed certificate: {e}") from e


def certify(state: ConstructionState, params: ConstructionParams, alpha: CFExpansion) -> Certificate:
    """Classify every index of ``alpha`` from fresh lambda enclosures."""
    gamma = params.gamma
    lams = lambda_enclosures(alpha)
    qs = denominators(alpha.digits)
    marked = {b.k: b.index for b in state.blocks}
    ceiling = gamma - params.epsilon
    with_c = params.spec.layout == WITH_C
    entries: List[CertificateEntry] = []
    undecided: List[int] = []
    for n, lam in enumerate(lams, start=1):
        block = state.block_of[n - 1]
        if n in marked:
            q = qs[n]
            band = params.pad(q) / (q * q)
            low = gamma if with_c else gamma - band
            if not (lam.above(low) and lam.below(gamma + band)):
                raise CertificateError(
                    f"marked index {n} of block {block}: lambda in {lam} misses its band around {format_exact(gamma)}",
                    {"n": n, "block": block},
                )
            cls = EntryClass.MARKED_ABOVE if with_c else EntryClass.MARKED_BAND
        elif lam.below(ceiling):
            cls = EntryClass.BELOW_MARGIN
        else:
            undecided.append(n)
            continue
        entries.append(CertificateEntry(n, qs[n], lam, cls, block))
    last_decided = (undecided[0] - 1) if undecided else len(lams)
    if undecided:
        logger.info("%d trailing indices undecided from %d on", len(undecided), undecided[0])
    return Certificate(
        gamma=gamma,
        mode=params.mode,
        pad=str(params.pad),
        epsilon=params.epsilon,
        n0=params.n0,
        c=params.c,
        layout=params.spec.to_dict(),
        blocks=[b.to_dict() for b in state.blocks],
        entries=entries,
        undecided=undecided,
        digit_count=len(alpha.digits),
        q_cover=qs[max(last_decided - 1, 0)],
    )
