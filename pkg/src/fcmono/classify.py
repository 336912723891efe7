"""Zariski-closure classification from exact parameter criteria.

The decision procedure layers exact tests: irreducibility of the full
group, irreducibility of its reflection subgroup (the minus-one count),
provable infiniteness (a nontrivial unipotent generator), the
trichotomy on the special eigenvalue delta_0, and the real-form
equality that pins the closure to the full orthogonal or symplectic
group.  Verdicts never overclaim: steps whose hypotheses cannot be
established exactly are either taken as recorded assumptions or left
undetermined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycNum, ParameterSet, unit_roots
from .monodromy import MonodromySystem, run_identity_checks
from .structure import EnumerationResult, check_irr

__all__ = ["ClassificationReport", "classify", "delta0_case",
           "sl_determinant_note"]

# citation tags name the rule applied at each step
CIT_IRR = "monodromy-irreducibility-criterion"
CIT_REF = "reflection-irreducibility-criterion"
CIT_TRI = "closure-trichotomy"
CIT_REAL = "real-form-equality"
CIT_ID_COMP = "identity-component-irreducibility"
CIT_FINITE = "finiteness-transfer"
CIT_UNIPOTENT = "unipotent-generator-infinite-order"
CIT_SL = "determinant-finite-order"
CIT_MAIN3 = "reducible-identity-component-implies-finite"

ASSUME_MON0 = "identity-component-irreducible (assumed)"
ASSUME_INF = "monodromy-infinite (assumed)"


@dataclass
class ClassificationReport:
    verdict: str                 # SL_contained | Sp_between | SO_between |
                                 # definite_O | definite_Sp | finite |
                                 # reducible | undetermined
    delta0_case: str             # "I" | "II" | "III"
    assumptions_used: list = field(default_factory=list)
    citations: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    irreducibility: object = None
    sl_contained_note: bool = True

    def to_json_dict(self):
        return {
            "verdict": self.verdict,
            "delta0_case": self.delta0_case,
            "assumptions_used": list(self.assumptions_used),
            "citations": list(self.citations),
            "notes": list(self.notes),
            "irreducibility": (self.irreducibility.to_json_dict()
                               if self.irreducibility else None),
            "sl_contained_note": self.sl_contained_note,
        }


def delta0_case(params: ParameterSet) -> str:
    """Trichotomy case of delta_0 = (-1)^{n+1} prod(gamma)/(alpha beta)."""
    roots = unit_roots(params)
    d0 = CycNum.from_fraction((-1) ** (params.n + 1))
    d0 = d0 * math.prod(roots.gamma, start=CycNum.one())
    d0 = d0 / (roots.alpha * roots.beta)
    if d0 == 1:
        return "II"
    if d0 == -1:
        return "III"
    return "I"


def sl_determinant_note(params: ParameterSet) -> bool:
    """Rational exponents force the determinant image to be finite, so
    the identity component sits in SL.  Always true in this exact
    layer; recorded in reports for completeness."""
    return all(isinstance(q, Fraction) for q in (params.a, params.b) + params.c)


def _real_form_hypotheses(params: ParameterSet) -> bool:
    half = Fraction(1, 2)
    return ((params.a + params.b).denominator == 1
            and all((c / half).denominator == 1 for c in params.c)
            and sum(params.c).denominator == 1)


def _provably_infinite(roots, case) -> str | None:
    """A reason string when some generator is unipotent and nontrivial."""
    one = CycNum.one()
    for k, g in enumerate(roots.gamma):
        if g == one:
            return f"M_{k+1} is a nontrivial unipotent (gamma_{k+1} = 1)"
    if case == "II":
        # delta_0 = 1 and v != 0 (guaranteed under irreducibility since
        # alpha != 1 != beta) make M_0 a nontrivial transvection
        return "M_0 is a nontrivial transvection (delta_0 = 1)"
    return None


def classify(params: ParameterSet, finiteness_hint=None) -> ClassificationReport:
    """Apply the classification steps in order; see module docstring.

    ``finiteness_hint`` may be None, the string "infinite_assumed", or
    an EnumerationResult.  A finite enumeration yields the verdict
    "finite"; a budget_exceeded one carries no information (the probes
    are semi-decisions and never prove infiniteness).
    """
    case = delta0_case(params)
    rep = ClassificationReport(verdict="undetermined", delta0_case=case)
    rep.sl_contained_note = sl_determinant_note(params)
    rep.citations.append(CIT_SL)

    verdict_irr = check_irr(params)
    rep.irreducibility = verdict_irr
    rep.citations.append(CIT_IRR)
    if verdict_irr.mon_irreducible == "fails":
        rep.verdict = "reducible"
        w, I = verdict_irr.witnesses[0]
        rep.notes.append(
            f"{w} equals the gamma subproduct over word {list(I)};"
            " the representation is reducible")
        return rep

    rep.citations.append(CIT_REF)
    ref_irr = verdict_irr.ref_irreducible == "holds"
    if not ref_irr:
        rep.notes.append(
            "reflection subgroup acts reducibly "
            f"({verdict_irr.minus_one_count} of gamma_1..gamma_n, alpha/beta "
            "equal -1); invariant-subspace witnesses are constructible")

    if isinstance(finiteness_hint, EnumerationResult):
        if finiteness_hint.kind == "finite":
            rep.verdict = "finite"
            rep.citations.append(CIT_FINITE)
            rep.notes.append(
                f"enumeration closed with order {finiteness_hint.order}")
            return rep
        rep.notes.append("enumeration exceeded its budget; no conclusion")
        finiteness_hint = None

    roots = unit_roots(params)
    infinite_reason = _provably_infinite(roots, case)
    assumed_infinite = finiteness_hint == "infinite_assumed"
    mon_infinite = infinite_reason is not None or assumed_infinite
    if infinite_reason:
        rep.citations.append(CIT_UNIPOTENT)
        rep.notes.append(infinite_reason)
    elif assumed_infinite:
        rep.assumptions_used.append(ASSUME_INF)

    if not ref_irr:
        rep.notes.append(
            "identity-component irreducibility cannot be derived here; "
            "verdict left undetermined")
        return rep

    # Ref irreducible from here on
    if mon_infinite:
        rep.citations.append(CIT_ID_COMP)
        mon0_irr = True
    else:
        rep.assumptions_used.append(ASSUME_MON0)
        rep.notes.append(
            "infiniteness not established; identity-component "
            "irreducibility recorded as an assumption")
        mon0_irr = True
    rep.notes.append(
        "were the identity component of the reflection subgroup reducible, "
        "the group would be finite; that hypothesis has no exact test here "
        f"[{CIT_MAIN3}]")

    rep.citations.append(CIT_TRI)
    if case == "I":
        rep.verdict = "SL_contained"
        return rep

    if _real_form_hypotheses(params) and mon0_irr:
        rep.citations.append(CIT_REAL)
        expected = "II" if params.n % 2 == 1 else "III"
        if case != expected:
            raise AssertionError("delta_0 must be (-1)^{n+1} under the "
                                 "real-form hypotheses")
        sys = MonodromySystem(params)
        checks = run_identity_checks(sys)
        bilinear = all(M.involution() == M for M in sys.M) \
            and sys.H.involution() == sys.H \
            and all(ok for _, ok, _ in checks)
        if not bilinear:
            raise AssertionError("real-form hypotheses verified arithmetically"
                                 " but the bilinear invariance check failed")
        rep.notes.append("generators and pairing are fixed by the involution;"
                         " tM.H.M = H holds as a bilinear identity")
        rep.verdict = "definite_Sp" if params.n % 2 == 1 else "definite_O"
        return rep

    # without the real-form equality the trichotomy leaves two options
    side = "Sp" if case == "II" else "SO"
    group = "GSp" if case == "II" else "GO"
    rep.notes.append(
        f"case {case}: either SL is contained in the closure, or "
        f"{side} <= closure <= {group}; not decided by exact criteria")
    return rep
