"""Structural probes: irreducibility criteria, invariant-subspace
witnesses for the reducible cases, and finiteness probes.

The irreducibility tests are exact parameter conditions.  When the
reflection subgroup is provably reducible (two of the gamma_k equal -1,
or some gamma_k = -1 with beta = -alpha), ``build_reducible_witness``
constructs the pair of complementary invariant subspaces W+ and W- and
``verify_reducible_witness`` certifies their invariance under all 2^n
conjugate reflections, exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cyclotomic import CycNum
from .linalg import (ExactMatrix, identity, index_words, word_rank,
                     word_weight, vec_is_zero)
from .monodromy import MonodromySystem, build_reflection

__all__ = [
    "IrreducibilityVerdict", "check_irr",
    "ReducibleWitness", "build_reducible_witness", "verify_reducible_witness",
    "ProbeResult", "conjugate_orbit_probe",
    "EnumerationResult", "enumerate_group",
]


@dataclass
class IrreducibilityVerdict:
    """Exact irreducibility verdicts for the full group and its
    reflection subgroup.  Tri-state vocabulary kept for forward
    compatibility; rational parameters always decide to holds/fails."""

    mon_irreducible: str            # "holds" | "fails"
    ref_irreducible: str
    minus_one_count: int
    witnesses: list = field(default_factory=list)  # (which, word) failures
    minus_one_members: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "mon_irreducible": self.mon_irreducible,
            "ref_irreducible": self.ref_irreducible,
            "minus_one_count": self.minus_one_count,
            "witnesses": [{"side": w, "word": list(I)}
                          for w, I in self.witnesses],
            "minus_one_members": list(self.minus_one_members),
        }


def check_irr(params) -> IrreducibilityVerdict:
    """alpha, beta must avoid every subproduct of the gamma_k.

    The group acts irreducibly iff alpha != prod gamma_k^{i_k} and
    beta != prod gamma_k^{i_k} for every 0/1 word; the reflection
    subgroup additionally needs at most one of gamma_1..gamma_n,
    alpha/beta equal to -1.
    """
    from .cyclotomic import unit_roots
    roots = unit_roots(params)
    n = len(roots.gamma)
    witnesses = []
    for I in index_words(n):
        prod = math.prod((g for g, i in zip(roots.gamma, I) if i),
                         start=CycNum.one())
        if roots.alpha == prod:
            witnesses.append(("alpha", I))
        if roots.beta == prod:
            witnesses.append(("beta", I))
    minus_one = CycNum.from_fraction(-1)
    members = [f"gamma_{k+1}" for k, g in enumerate(roots.gamma)
               if g == minus_one]
    if roots.alpha * roots.beta.inverse() == minus_one:
        members.append("alpha/beta")
    mon = "holds" if not witnesses else "fails"
    ref = "holds" if mon == "holds" and len(members) <= 1 else "fails"
    return IrreducibilityVerdict(mon, ref, len(members), witnesses, members)


# -- reducible witnesses ------------------------------------------------

_E0 = (1, 0)
_E1 = (0, 1)
_D = (-1, 2)  # 2 e_1 - e_0


def _tensor(facs):
    vec = [CycNum.from_fraction(x) for x in facs[0]]
    for f in facs[1:]:
        vec = [x * CycNum.from_fraction(y) for y in f for x in vec]
    return vec


@dataclass
class ReducibleWitness:
    kind: str                  # "two-gammas" | "gamma-and-ab"
    slots: tuple               # tensor slots carrying the -1 factors (1-based)
    W_plus: list               # basis vectors
    W_minus: list
    lambda_table: dict         # label -> CycNum

    def to_json_dict(self):
        from .serialize import cyc_to_json
        return {
            "kind": self.kind,
            "slots": list(self.slots),
            "W_plus": [[cyc_to_json(x) for x in w] for w in self.W_plus],
            "W_minus": [[cyc_to_json(x) for x in w] for w in self.W_minus],
            "lambda_table": {k: cyc_to_json(v)
                             for k, v in sorted(self.lambda_table.items())},
        }


def build_reducible_witness(sys: MonodromySystem, kind=None) -> ReducibleWitness:
    """Construct the invariant pair W+/W- for a provably reducible case.

    kind "two-gammas": gamma_p = gamma_q = -1 for two slots p < q; the
    basis vectors put e_0 or 2e_1 - e_0 in slots p, q and unit vectors
    elsewhere.  kind "gamma-and-ab": gamma_p = -1 and beta = -alpha,
    one distinguished slot.  The original tensor coordinates are used
    directly (no renumbering of slots is needed for the construction,
    only for the bookkeeping of which slots are special).
    """
    minus_one = CycNum.from_fraction(-1)
    slots = [k + 1 for k, g in enumerate(sys.roots.gamma) if g == minus_one]
    ab_flip = sys.roots.beta == -sys.roots.alpha
    if kind is None:
        kind = "two-gammas" if len(slots) >= 2 else (
            "gamma-and-ab" if slots and ab_flip else None)
    if kind == "two-gammas":
        if len(slots) < 2:
            raise ValueError("need two slots with gamma = -1")
        special = (slots[0], slots[1])
    elif kind == "gamma-and-ab":
        if not slots or not ab_flip:
            raise ValueError("need gamma_p = -1 and beta = -alpha")
        special = (slots[0],)
    else:
        raise ValueError("no -1 pattern matches: witness precondition fails")

    n = sys.n
    others = [k for k in range(1, n + 1) if k not in special]
    rest_words = index_words(len(others))
    Wp, Wm = [], []
    lam = {}

    def slot_factors(bits_special, rest):
        facs = [None] * n
        for s, bit in zip(special, bits_special):
            facs[s - 1] = _D if bit else _E0
        for o, bit in zip(others, rest):
            facs[o - 1] = _E1 if bit else _E0
        return facs

    def v_at(bits_special, rest):
        I = [0] * n
        for s, bit in zip(special, bits_special):
            I[s - 1] = bit
        for o, bit in zip(others, rest):
            I[o - 1] = bit
        return sys.v[word_rank(tuple(I))]

    for rest in rest_words:
        label = ",".join(str(b) for b in rest) if rest else "-"
        if kind == "two-gammas":
            g00 = _tensor(slot_factors((0, 0), rest))
            g10 = _tensor(slot_factors((1, 0), rest))
            g01 = _tensor(slot_factors((0, 1), rest))
            g11 = _tensor(slot_factors((1, 1), rest))
            Wp.append([x + y for x, y in zip(g00, g11)])
            Wp.append([x + y for x, y in zip(g10, g01)])
            Wm.append([x - y for x, y in zip(g00, g11)])
            Wm.append([x - y for x, y in zip(g10, g01)])
            lam[f"0;{label}"] = v_at((0, 0), rest)
            lam[f"1;{label}"] = v_at((1, 0), rest)
        else:
            h0 = _tensor(slot_factors((0,), rest))
            h1 = _tensor(slot_factors((1,), rest))
            Wp.append([x + y for x, y in zip(h0, h1)])
            Wm.append([x - y for x, y in zip(h0, h1)])
            lam[label] = -v_at((0,), rest)
    return ReducibleWitness(kind, special, Wp, Wm, lam)


class _Span:
    """Echelonised span with inversion-free membership reduction."""

    def __init__(self, vectors):
        self.dim = len(vectors)
        m = ExactMatrix(list(zip(*vectors)))  # columns = vectors
        ech, pivots, _, _ = m.transpose()._echelon()
        self.rows = [ech[r] for r in range(len(pivots))]
        self.pivots = pivots
        if len(pivots) != self.dim:
            raise ValueError("witness basis is linearly dependent")

    def contains(self, vec):
        x = list(vec)
        for row, pc in zip(self.rows, self.pivots):
            c = x[pc]
            if not c.is_zero():
                x = [a - c * b for a, b in zip(x, row)]
        return vec_is_zero(x)

    def contains_all(self, vectors):
        return all(self.contains(v) for v in vectors)


def verify_reducible_witness(sys: MonodromySystem, wit: ReducibleWitness):
    """Exact invariance transcript for a witness pair.

    Checks dimensions and complementarity, the slotwise mapping claims
    (special-slot generators swap W+ and W-, the others and M_0
    preserve them), invariance under every conjugate reflection R_I,
    and the displayed M_0 action on the spanning vectors against the
    lambda table.  Returns (ok, transcript list).
    """
    out = []
    size = sys.size
    half = size // 2
    sp = _Span(wit.W_plus)
    sm = _Span(wit.W_minus)
    out.append(("dimensions", sp.dim == half and sm.dim == half,
                f"dim W+ = dim W- = {half}"))
    both = ExactMatrix(list(zip(*(wit.W_plus + wit.W_minus))))
    out.append(("complementary", both.rank() == size,
                "W+ intersect W- = 0, W+ + W- = C^{2^n}"))

    def maps_to(M, vecs, target):
        return target.contains_all(M.apply(v) for v in vecs)

    for k in range(1, sys.n + 1):
        M = sys.M[k]
        if k in wit.slots:
            ok = maps_to(M, wit.W_plus, sm) and maps_to(M, wit.W_minus, sp)
            out.append((f"M{k}_swaps", ok, "M_k W+- = W-+"))
        else:
            ok = maps_to(M, wit.W_plus, sp) and maps_to(M, wit.W_minus, sm)
            out.append((f"M{k}_preserves", ok, "M_k W+- = W+-"))
    ok0 = maps_to(sys.M[0], wit.W_plus, sp) and maps_to(sys.M[0], wit.W_minus, sm)
    out.append(("M0_preserves", ok0, "M_0 W+- = W+-"))

    allok = True
    for I in index_words(sys.n):
        R = build_reflection(sys, I).R
        allok = allok and maps_to(R, wit.W_plus, sp) \
            and maps_to(R, wit.W_minus, sm)
    out.append(("all_reflections_preserve", allok,
                "R_I W+- = W+- for all 2^n words"))

    # M_0 acts on each spanning vector as w -> w - (v . w) e_(1..1);
    # the lambda table records those coefficients.
    e_last_ok = True
    for w in wit.W_plus + wit.W_minus:
        img = sys.M[0].apply(w)
        coef = sum((x * y for x, y in zip(sys.v, w)), CycNum.zero())
        expect = list(w)
        expect[size - 1] = expect[size - 1] - coef
        e_last_ok = e_last_ok and all((a - b).is_zero()
                                      for a, b in zip(img, expect))
    out.append(("M0_action_displays", e_last_ok,
                "M_0 w = w - (v.w) e_(1..1) on all spanning vectors"))
    ok = all(flag for _, flag, _ in out)
    return ok, out


# -- finiteness probes ---------------------------------------------------


@dataclass
class ProbeResult:
    kind: str          # "finite_order" | "exceeds_budget"
    order: int = 0

    def to_json_dict(self):
        return {"kind": self.kind, "order": self.order} \
            if self.kind == "finite_order" else {"kind": self.kind}


def conjugate_orbit_probe(sys: MonodromySystem, k: int, budget: int) -> ProbeResult:
    """Order of M_k if at most ``budget``; drives the conjugate-orbit
    finiteness argument (the orbit {M_k^d M_0 M_k^-d} is finite iff
    M_k has finite order)."""
    if budget < 1:
        raise ValueError("budget must be positive")
    if not 1 <= k <= sys.n:
        raise IndexError("generator index out of range")
    E = identity(sys.size)
    P = sys.M[k]
    for d in range(1, budget + 1):
        if P == E:
            return ProbeResult("finite_order", d)
        if d < budget:
            P = P @ sys.M[k]
    return ProbeResult("exceeds_budget")


@dataclass
class EnumerationResult:
    kind: str            # "finite" | "budget_exceeded"
    order: int = 0
    element_count: int = 0

    def to_json_dict(self):
        if self.kind == "finite":
            return {"kind": "finite", "order": self.order}
        return {"kind": "budget_exceeded", "element_count": self.element_count}


def generator_set(sys: MonodromySystem, which: str):
    if which == "monodromy":
        return list(sys.M)
    if which == "reflections":
        return [build_reflection(sys, I).R for I in index_words(sys.n)]
    raise ValueError("generator set must be 'monodromy' or 'reflections'")


def enumerate_group(generators, budget: int, conductor=None) -> EnumerationResult:
    """Breadth-first closure of the generated matrix group.

    Elements are deduplicated by the canonical coefficient key of every
    entry at a common conductor, so equal matrices always collide.
    Deterministic: the frontier is processed in insertion order and
    generators in the given order.  Stops once more than ``budget``
    distinct elements are seen.
    """
    if budget < 1:
        raise ValueError("budget must be positive")
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    if conductor is None:
        conductor = 1
        for g in gens:
            for row in g.data:
                for x in row:
                    conductor = math.lcm(conductor, x.conductor())
    step = gens + [g.inverse() for g in gens]

    def key(M):
        return tuple(x.canonical_key(conductor) for row in M.data for x in row)

    E = identity(gens[0].rows)
    seen = {key(E): E}
    frontier = [E]
    while frontier:
        nxt = []
        for M in frontier:
            for g in step:
                P = M @ g
                k = key(P)
                if k not in seen:
                    seen[k] = P
                    nxt.append(P)
                    if len(seen) > budget:
                        return EnumerationResult("budget_exceeded",
                                                 element_count=len(seen))
        frontier = nxt
    return EnumerationResult("finite", order=len(seen))
