# verification/recheck.py
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from cfcore.contfrac import CFExpansion, convergents, denominators, lambda_enclosures
from cfcore.surd import compare
from construction.certificate import Certificate, CertificateEntry, EntryClass
from construction.pad import parse_pad
from utils.errors import InsufficientDigitsError
from utils.logger import get_logger
from verification.solutions import SolutionReport

logger = get_logger("verification.recheck")


@dataclass
class RecheckResult:
    ok: bool
    checked: int
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def first_failure(self) -> Optional[Dict[str, Any]]:
        return self.failures[0] if self.failures else None

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "checked": self.checked, "first_failure": self.first_failure, "failures": self.failures}


def _class_holds(entry: CertificateEntry, certificate: Certificate, pad) -> bool:
    gamma = certificate.gamma
    lam = entry.lam
    if entry.cls is EntryClass.BELOW_MARGIN:
        return lam.below(gamma - certificate.epsilon)
    band = pad(entry.q_n) / (entry.q_n * entry.q_n)
    low = gamma if entry.cls is EntryClass.MARKED_ABOVE else gamma - band
    return lam.above(low) and lam.below(gamma + band)


def _structure_failures(certificate: Certificate, qs: List[int]) -> List[Dict[str, Any]]:
    """Coverage and bookkeeping problems that no single entry shows."""
    failures: List[Dict[str, Any]] = []

    def fail(reason: str, n: Optional[int] = None) -> None:
        failures.append({"n": n, "class": None, "reason": reason})

    count = certificate.digit_count
    if count < 1:
        fail("certificate covers no digits")
        return failures
    seen = Counter([e.n for e in certificate.entries] + list(certificate.undecided))
    missing = [n for n in range(1, count + 1) if n not in seen]
    extra = sorted(n for n, k in seen.items() if k > 1 or not 1 <= n <= count)
    if missing or extra:
        fail(f"indices 1..{count} are not each classified once (missing {missing[:10]}, extra {extra[:10]})",
             (missing or extra)[0])
    if not certificate.undecided_is_suffix():
        fail(f"undecided indices {certificate.undecided[:10]} do not form a suffix", certificate.undecided[0])
    marked = sorted(certificate.marked)
    if len(marked) != len(certificate.blocks):
        fail(f"{len(marked)} marked indices for {len(certificate.blocks)} blocks")
    separators = sorted(int(b.get("k", 0)) for b in certificate.blocks)
    if separators != marked:
        fail(f"block separators {separators[:10]} differ from the marked indices {marked[:10]}")
    last = max((certificate.undecided[0] - 1 if certificate.undecided else count) - 1, 0)
    if certificate.q_cover != qs[last]:
        fail(f"q_cover {certificate.q_cover} is not q_{last} = {qs[last]}")
    return failures


def recheck_certificate(certificate: Certificate, alpha: CFExpansion) -> RecheckResult:
    """
    Recompute every lambda enclosure from the digits and re-validate each class
    label, then check that the entries cover every index once, that each block
    has exactly one marked index and that q_cover matches the decided prefix.
    """
    top = max([e.n for e in certificate.entries] + list(certificate.undecided) + [certificate.digit_count])
    if len(alpha.digits) < top:
        raise InsufficientDigitsError(top, len(alpha.digits))
    pad = parse_pad(certificate.pad)
    lams = lambda_enclosures(alpha) if alpha.digits else []
    qs = denominators(alpha.digits)
    failures = []
    for entry in certificate.entries:
        if entry.n < 1:
            failures.append({"n": entry.n, "class": entry.cls.value, "reason": "index below 1"})
            continue
        fresh = lams[entry.n - 1]
        reason = None
        if qs[entry.n] != entry.q_n:
            reason = "q_n does not match the digits"
        elif not entry.lam.contains(fresh):
            reason = "recorded lambda interval does not contain the recomputed enclosure"
        elif not _class_holds(entry, certificate, pad):
            reason = f"recorded lambda interval violates class {entry.cls.value}"
        if reason:
            failures.append({"n": entry.n, "class": entry.cls.value, "reason": reason})
    failures.extend(_structure_failures(certificate, qs))
    if failures:
        logger.warning("certificate recheck failed at n=%s: %s", failures[0]["n"], failures[0]["reason"])
    return RecheckResult(not failures, len(certificate.entries), failures)


def certificate_conflicts(certificate: Certificate, alpha: CFExpansion, report: SolutionReport) -> List[Dict[str, Any]]:
    """
    Solutions found by brute force that the certificate rules out, and marked
    convergents it promises that brute force missed. Only signs none and minus
    are checked; there every solution is a convergent since gamma > 2.
    """
    if report.sign == "plus" or compare(certificate.gamma, 2) <= 0:
        return []
    found = set(report.pairs)
    conv = {(alpha.a0, 1): 0}
    for n, pq in enumerate(convergents(alpha, len(alpha.digits)), start=1):
        conv[pq] = n
    undecided = set(report.undecided)
    conflicts = []
    for p, q in sorted(found - set(conv), key=lambda pq: pq[1]):
        if q <= certificate.q_cover:
            conflicts.append({"p": p, "q": q, "reason": "solution is not a convergent"})
    for (p, q), n in sorted(conv.items(), key=lambda item: item[1]):
        entry = certificate.entry(n + 1)
        if entry is None or q > report.Q or q in undecided:
            continue
        if entry.cls is EntryClass.BELOW_MARGIN and (p, q) in found:
            conflicts.append({"p": p, "q": q, "n": n, "reason": "solution at a below-margin index"})
        elif entry.cls is EntryClass.MARKED_ABOVE and report.sign == "none" and (p, q) not in found:
            conflicts.append({"p": p, "q": q, "n": n, "reason": "marked convergent missing from the solutions"})
    return conflicts
