"""Structured verification reports with deterministic serialization.

A report captures one suite run: the statement checked (by internal id
plus the identity itself), pass/fail status, witnesses, residuals, and
the configuration.  JSON bytes are canonical (sorted keys, fixed
separators); only runtime_ms varies between identical runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclo import CycNum

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
FALSIFICATION = "falsification_candidate"

EXACT = "exact_identity"
FINITE = "finite_evidence"

# internal statement registry: suite id -> (anchor, verified identity, level)
STATEMENTS = {
    "gauss-norm": (
        "identity:gauss-sum-norm",
        "tau(xi) tau(conj xi) = xi_f(-1) N(m) for primitive xi mod m",
        EXACT,
    ),
    "gauss-mult": (
        "identity:gauss-sum-multiplicativity",
        "tau(chi phi) = tau(chi) tau(phi) chi(m_phi) phi_f(M) for coprime moduli",
        EXACT,
    ),
    "gauss-decomp": (
        "identity:gauss-sum-decomposition-degree-2",
        "tau(psi o N) = chi_D(p)^n psi(d_K) tau(psi)^2 for psi mod p^n",
        EXACT,
    ),
    "kloosterman": (
        "identity:kloosterman-criterion-and-power",
        "Kl_d(r;p^2) != 0 iff r^((p-1)/(d,p-1)) = 1 (p); tau(phi)^d = sum_r phi(r) Kl_d(r;p^2)",
        EXACT,
    ),
    "twisted-average": (
        "statement:twisted-gauss-average-nonvanishing",
        "sum_i tau(psi^i om^j o N) psi^i(m) != 0 for some j; linked to Kl_2 exactly",
        EXACT,
    ),
    "partial-l": (
        "identity:wild-restricted-series-coefficients",
        "restricted L-series = (p-1)/p L - (1/p) sum_i L(. psi^i twist), coefficientwise",
        EXACT,
    ),
    "fe": (
        "check:functional-equation-numerics",
        "numeric L(0) matches the finite character-sum value; Lambda is cut-stable; L(0)^sigma = L(0, xi^sigma)",
        EXACT,
    ),
    "theorem2": (
        "experiment:sector-averaged-l-values",
        "compensated sector average of L(0) values approaches sqrt(d_K)/((pi i)^2 N(r)) * c_eta(N(r))",
        FINITE,
    ),
    "primitive-nonvanish": (
        "statement:norm-average-nonvanishing",
        "c_eta(m) != 0 for some m with nontrivial p-projection",
        FINITE,
    ),
    "determination": (
        "statement:norm-average-determines-gauss-data",
        "sum a_eta c_eta(m) = 0 on wild m implies sum a_eta tau(eta) eta_f(p^2 q) = 0",
        EXACT,
    ),
    "generation": (
        "statement:field-generation-chain",
        "Q(eta') in Q(c_wild); F(c',chi) = F(L-value) in F(eta,chi) at finite truncation",
        FINITE,
    ),
}


def encode_value(v):
    """JSON-encode exact and numeric values; numbers become decimal strings."""
    if isinstance(v, CycNum):
        return {"cyc": v.to_json()}
    if isinstance(v, Fraction):
        return {"fraction": [str(v.numerator), str(v.denominator)]}
    if isinstance(v, complex):
        return {"complex": [repr(v.real), repr(v.imag)]}
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    return v


@dataclass
class VerificationReport:
    suite: str
    status: str
    config: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    runtime_ms: int = 0
    counts: dict = field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return STATEMENTS[self.suite][0]

    @property
    def quote(self) -> str:
        return STATEMENTS[self.suite][1]

    @property
    def evidence_level(self) -> str:
        return STATEMENTS[self.suite][2]

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "anchor": self.anchor,
            "quote": self.quote,
            "status": self.status,
            "config": encode_value(self.config),
            "witnesses": [encode_value(w) for w in self.witnesses],
            "residuals": [str(r) for r in self.residuals],
            "counts": encode_value(self.counts),
            "runtime_ms": self.runtime_ms,
            "evidence_level": self.evidence_level,
        }

    def to_bytes(self) -> bytes:
        return (
            json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))
            + "\n"
        ).encode()

    def stable_bytes(self) -> bytes:
        """Canonical bytes with the runtime field zeroed (determinism checks)."""
        obj = self.to_json_obj()
        obj["runtime_ms"] = 0
        return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()

    def to_markdown(self) -> str:
        lines = [
            f"## suite `{self.suite}`",
            "",
            f"- anchor: `{self.anchor}`",
            f"- statement: {self.quote}",
            f"- status: **{self.status}**",
            f"- evidence level: {self.evidence_level}",
            f"- runtime: {self.runtime_ms} ms",
        ]
        if self.counts:
            pieces = ", ".join(f"{k}={v}" for k, v in sorted(self.counts.items()))
            lines.append(f"- counts: {pieces}")
        if self.residuals:
            lines.append(f"- residuals: {', '.join(str(r) for r in self.residuals)}")
        if self.witnesses:
            lines.append(f"- witnesses: {len(self.witnesses)} recorded")
        lines.append("")
        return "\n".join(lines)


def exit_code(reports: list[VerificationReport]) -> int:
    statuses = {r.status for r in reports}
    if FALSIFICATION in statuses:
        return 70
    if FAIL in statuses:
        return 1
    if INCONCLUSIVE in statuses:
        return 65
    return 0
