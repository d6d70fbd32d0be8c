"""End-to-end verification of a realization plan through its algebraic checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .homology import build_action, check_tor_concentration, koszul_tor, z_model_compare
from .monomial import MonomialRing, hilbert_function, is_square_free
from .parser import parse_presentation
from .plan import RealizationPlan, dumps, emit_plan
from .polarization import check_rank_identity, check_regular_sequence
from .stanley_reisner import complex_from_ideal, ideal_from_complex

GOLDEN_PRESENTATION = "ring { even: x:4; odd: y:1 } ideal { x^2*y }"
GOLDEN_DMAX = 40


@dataclass
class CheckRecord:
    name: str
    d_max: int | None
    verdict: str  # PASS, FAIL, INCONCLUSIVE or ERROR
    witnesses: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"name": self.name, "d_max": self.d_max, "verdict": self.verdict,
                "witnesses": list(self.witnesses)}


@dataclass
class VerificationReport:
    d_max: int
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return "PASS" if all(r.verdict == "PASS" for r in self.records) else "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def record(self, name: str) -> CheckRecord:
        return next(r for r in self.records if r.name == name)

    def to_dict(self) -> dict:
        return {"d_max": self.d_max, "verdict": self.verdict,
                "checks": [r.to_dict() for r in self.records]}

    def format(self) -> str:
        lines = [f"{r.name:<22} {r.verdict:<12} d_max={r.d_max}" +
                 ("".join(f"\n    {w}" for w in r.witnesses)) for r in self.records]
        lines.append(f"overall: {self.verdict}")
        return "\n".join(lines)


def _verdict(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


def _square_free(plan: RealizationPlan, d_max: int) -> CheckRecord:
    ideal = plan.polarization.polarized.ideal
    table = plan.polarization.polarized.table
    bad = [g.format(table) for g in ideal.generators if any(e > 1 for e in g.exps)]
    return CheckRecord("square_free", None, _verdict(is_square_free(ideal)), bad)


def _sr_round_trip(plan: RealizationPlan, d_max: int) -> CheckRecord:
    pol = plan.polarization.polarized
    back = ideal_from_complex(plan.complex, plan.labeling, pol.table)
    again = complex_from_ideal(back, plan.labeling)
    wit = []
    if back != pol.ideal:
        wit.append("ideal -> complex -> ideal changed the generators")
    if again != plan.complex:
        wit.append("complex -> ideal -> complex changed the minimal non-faces")
    return CheckRecord("sr_round_trip", None, _verdict(not wit), wit)


def _rank_identity(plan: RealizationPlan, d_max: int) -> CheckRecord:
    rep = check_rank_identity(plan.polarization, d_max)
    d = rep.first_mismatch
    wit = [] if d is None else [f"degree {d}: A has rank {rep.source[d]}, "
                                f"identified A' has rank {rep.identified[d]}"]
    return CheckRecord("rank_identity", d_max, _verdict(rep.passed), wit)


def _regular_sequence(plan: RealizationPlan, d_max: int) -> CheckRecord:
    rep = check_regular_sequence(plan.polarization, d_max)
    wit = [f"step {k}: multiplication has a kernel in degree {d}" for k, d in rep.kernels]
    wit += [f"step {k}: no nonempty degree within the bound" for k in rep.untested_steps]
    return CheckRecord("regular_sequence", d_max, rep.verdict, wit)


def _koszul_tor(plan: RealizationPlan, d_max: int) -> CheckRecord:
    tor = koszul_tor(build_action(plan.polarization, d_max))
    res = check_tor_concentration(tor, hilbert_function(plan.source, d_max))
    wit = [f"nonzero Tor^(-{p},{q})" for p, q in res.higher]
    wit += [f"torsion in Tor^(0,{q})" for q in res.torsion]
    wit += [f"Tor^(0,{q}) rank differs from rank of A" for q in res.rank_mismatch]
    return CheckRecord("koszul_tor", d_max, _verdict(res.passed), wit)


def _z_model(plan: RealizationPlan, d_max: int) -> CheckRecord:
    rep = z_model_compare(plan, d_max)
    qp = plan.z_model.q_prime.table
    src = plan.polarization.polarized.table
    wit = []
    if not rep.ideals_match:
        wit.append("identified L' differs from L")
    if rep.first_rank_mismatch is not None:
        wit.append(f"ranks of identified Q'/L' and Q/L differ in degree {rep.first_rank_mismatch}")
    wit += [f"image {img.format(qp)} of {g.format(src)} is not in L'" for g, img in rep.escaped]
    return CheckRecord("z_model", d_max, _verdict(rep.passed), wit)


def _predicted(plan: RealizationPlan, d_max: int) -> CheckRecord:
    predicted = parse_presentation(dumps_presentation(plan))
    h_pred = hilbert_function(predicted, d_max)
    h_src = hilbert_function(plan.source, d_max)
    wit = [f"degree {d}: predicted {x}, A has {y}"
           for d, (x, y) in enumerate(zip(h_pred.ranks, h_src.ranks)) if x != y]
    return CheckRecord("predicted_cohomology", d_max, _verdict(not wit), wit)


def dumps_presentation(plan: RealizationPlan) -> str:
    return plan.to_dict()["predicted_cohomology"]["torsion_free_quotient"]


CHECKS = (
    ("square_free", _square_free),
    ("sr_round_trip", _sr_round_trip),
    ("rank_identity", _rank_identity),
    ("regular_sequence", _regular_sequence),
    ("koszul_tor", _koszul_tor),
    ("z_model", _z_model),
    ("predicted_cohomology", _predicted),
)


def verify_plan(plan: RealizationPlan, d_max: int) -> VerificationReport:
    if d_max < 0:
        raise ValueError("d_max must be non-negative")
    report = VerificationReport(d_max)
    for name, check in CHECKS:
        try:
            report.records.append(check(plan, d_max))
        except Exception as exc:  # keep going so every failure is collected
            report.records.append(CheckRecord(name, d_max, "ERROR", [f"{type(exc).__name__}: {exc}"]))
    return report


def verify(ring: MonomialRing, d_max: int) -> VerificationReport:
    return verify_plan(emit_plan(ring), d_max)


def golden_example() -> tuple[RealizationPlan, VerificationReport]:
    plan = emit_plan(parse_presentation(GOLDEN_PRESENTATION))
    return plan, verify_plan(plan, GOLDEN_DMAX)


def golden_document() -> str:
    plan, report = golden_example()
    return dumps({"plan": plan.to_dict(), "verification": report.to_dict()})
