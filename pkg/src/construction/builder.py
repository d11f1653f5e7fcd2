# construction/builder.py
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Tuple

from cantorsum.digits import bounded
from cantorsum.represent import GammaRepresentation, represent_gamma
from cfcore.contfrac import CFExpansion, CFTail
from cfcore.exact import exact_record
from cfcore.surd import Exact
from construction.blocks import WITH_C, ConstructionParams, ConstructionState, bounding_chain_holds, next_block
from construction.certificate import Certificate, certify
from construction.pad import PadFunction
from utils.errors import ConstructionError
from utils.logger import get_logger

logger = get_logger("construction.builder")


def representation_depth(lookahead: int) -> int:
    return 4 * lookahead + 256


def grow_blocks(params: ConstructionParams, rep: GammaRepresentation, blocks: int) -> ConstructionState:
    if blocks < 1:
        raise ValueError("blocks must be at least 1")
    if rep.regime is not params.regime or rep.c != params.c:
        raise ConstructionError(
            f"representation regime {rep.regime.value} (c={rep.c}) does not match the parameters ({params.regime.value}, c={params.c})"
        )
    state = ConstructionState()
    for _ in range(blocks):
        next_block(state, params, rep)
    if params.spec.layout == WITH_C:
        state.extend(params.spec.c_block, blocks + 1)
    return state


def finish(state: ConstructionState, params: ConstructionParams) -> Tuple[CFExpansion, Certificate]:
    alpha = CFExpansion(0, tuple(state.digits), CFTail.within(bounded(params.spec.tail_digit_bound)))
    certificate = certify(state, params, alpha)
    if params.spec.layout == WITH_C and certificate.undecided:
        raise ConstructionError(
            f"indices {certificate.undecided[:10]} are neither marked nor below gamma - epsilon",
            {"undecided": certificate.undecided},
        )
    if not certificate.undecided_is_suffix():
        raise ConstructionError(
            f"undecided indices {certificate.undecided[:10]} do not form a suffix of the {certificate.digit_count} digits",
            {"undecided": certificate.undecided},
        )
    for i in range(1, len(state.blocks) + 1):
        if not bounding_chain_holds(state, i):
            logger.warning("bounding chain fails for block %d", i)
    return alpha, certificate


def build_alpha(params: ConstructionParams, rep: GammaRepresentation, blocks: int) -> Tuple[CFExpansion, Certificate]:
    """alpha through ``blocks`` blocks (plus the trailing C) and its certificate."""
    return finish(grow_blocks(params, rep, blocks), params)


@dataclass
class ConstructionResult:
    params: ConstructionParams
    representation: GammaRepresentation
    state: ConstructionState
    alpha: CFExpansion
    certificate: Certificate

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": exact_record(self.params.gamma),
            "mode": self.params.mode,
            "pad": str(self.params.pad),
            "regime": self.params.regime.value,
            "c": self.params.c,
            "n0": self.params.n0,
            "epsilon": exact_record(self.params.epsilon),
            "layout": self.params.spec.to_dict(),
            "blocks": [b.to_dict() for b in self.state.blocks],
            "digits": len(self.alpha.digits),
            "representation": self.representation.to_dict(),
            "certificate": self.certificate.summary(),
        }


def construct(gamma: Exact, pad: PadFunction, mode: str, blocks: int, lookahead: int = 10_000) -> ConstructionResult:
    rep = represent_gamma(gamma, depth_cap=representation_depth(lookahead))
    params = ConstructionParams.prepare(gamma, pad, mode, rep.c, lookahead)
    state = grow_blocks(params, rep, blocks)
    alpha, certificate = finish(state, params)
    logger.info("built %d digits with marked indices %s", len(alpha.digits), certificate.marked)
    return ConstructionResult(params, rep, state, alpha, certificate)
