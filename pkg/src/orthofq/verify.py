"""Verification suites.

Each suite re-derives a classical statement about forms and orthogonal groups
by exhaustive computation at desk scale and returns one :class:`Check` record
per comparison.  ``run_suite`` is what ``orthofq verify`` calls.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional

import numpy as np

from . import clifford, forms, groups
from .forms import BilinearForm, Form, QuadraticForm, TypeTag
from .gf import FieldElement, FieldSpec, arf_residue, make_field
from .linalg import Vector

PLUS, MINUS, ODD = TypeTag.PLUS, TypeTag.MINUS, TypeTag.ODD


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.name, "passed": self.passed, **self.detail}


@dataclass
class Config:
    seed: int = 0
    budget: Optional[int] = None

    def rng(self, *salt: object) -> random.Random:
        return random.Random(f"{self.seed}:" + ":".join(map(str, salt)))


def _field(q: int) -> FieldSpec:
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = round(np.log(q) / np.log(p))
    return make_field(p, k)


def _tag_name(tag: Optional[TypeTag]) -> str:
    return "" if tag in (None, ODD) else ("+" if tag is PLUS else "-")


def _group(q: int, n: int, tag: TypeTag, cfg: Config) -> groups.EnumeratedGroup:
    fld = _field(q)
    form: Form = forms.standard_quadratic(fld, n, tag)
    if fld.p != 2:
        form = forms.standard_bilinear(fld, n, tag)
    return groups.enumerate_group(form, budget=cfg.budget)


def random_form(fld: FieldSpec, n: int, rng: random.Random) -> Form:
    """A random nonsingular symmetric bilinear form (odd char) or nondegenerate quadratic form."""
    if fld.p == 2:
        return forms.random_nondegenerate_quadratic(fld, n, rng)
    return forms.random_symmetric_nonsingular(fld, n, rng)


# -- helpers shared by several suites ------------------------------------------------

def isomorphism_report(Q: QuadraticForm, cfg: Config, max_pairs: int = 10**4) -> dict:
    """Check the char 2, odd n map O(Q) -> Sp(n - 1) against both enumerated groups."""
    iso = groups.char2_odd_isomorphism(Q)
    G = groups.enumerate_group(Q, budget=cfg.budget)
    S = groups.enumerate_group(iso.symplectic_form, budget=cfg.budget)
    phi = np.array([S.index(iso.matrix(g.mat)) for g in G], dtype=np.int64)
    onto = bool(np.all(phi >= 0)) and len(set(phi.tolist())) == len(S)
    injective = len(set(phi.tolist())) == len(G)
    lefts = np.arange(len(G))
    pairs = len(G) ** 2
    if len(G) > 1000:
        lefts = cfg.rng("iso", Q.field.q, Q.n).sample(range(len(G)), max(1, max_pairs // len(G)))
        pairs = len(lefts) * len(G)
    bad = 0
    for g in lefts:
        lhs = phi[G.product_indices(int(g))]
        rhs = S.product_indices(int(phi[g]), phi)
        bad += int(np.count_nonzero(lhs != rhs))
    return {
        "radical_dim": len(forms.radical_bilinear(Q.polar)),
        "order_O": len(G),
        "order_Sp": len(S),
        "bijective": onto and injective,
        "pairs_checked": int(pairs),
        "violations": bad,
    }


def _witness_ok(a: Form, b: Form) -> bool:
    c = forms.equivalence_witness(a, b)
    return c is not None and forms.pullback(b, c) == a


# -- suites ---------------------------------------------------------------------------

def suite_theorem1(cfg: Config) -> list[Check]:
    """The four cells of the classification table for q in {2,3,4,5}, n in {2,3,4}."""
    out = []
    for q, n in itertools.product((2, 3, 4, 5), (2, 3, 4)):
        fld = _field(q)
        name = f"q={q} n={n}"
        if fld.p != 2 and n % 2:
            a = BilinearForm.diagonal(fld, [1] * n)
            b = BilinearForm.diagonal(fld, [1] * (n - 1) + [fld.nonsquare])
            inequivalent = forms.equivalence_witness(a, b) is None
            oa = len(groups.enumerate_group(a, budget=cfg.budget))
            ob = len(groups.enumerate_group(b, budget=cfg.budget))
            ok = inequivalent and oa == ob
            out.append(Check("theorem1", name, ok, {
                "cell": "O(n)", "inequivalent_forms": inequivalent, "orders": [oa, ob]}))
        elif n % 2 == 0:
            rng = cfg.rng("theorem1", q, n)
            reps = {forms.classify(forms.standard_quadratic(fld, n, t)): t for t in (PLUS, MINUS)}
            std = {t: (forms.standard_quadratic(fld, n, t) if fld.p == 2 else forms.standard_bilinear(fld, n, t))
                   for t in (PLUS, MINUS)}
            seen = set()
            witnessed = True
            for _ in range(40):
                f = random_form(fld, n, rng)
                cls = forms.classify(f)
                seen.add(cls.type_tag)
                witnessed &= _witness_ok(f, std[cls.type_tag])
            distinct = forms.equivalence_witness(std[PLUS], std[MINUS]) is None
            ok = len(reps) == 2 and seen == {PLUS, MINUS} and distinct and witnessed
            out.append(Check("theorem1", name, ok, {
                "cell": "O+/O-", "classes_seen": sorted(t.value for t in seen),
                "plus_minus_inequivalent": distinct, "witnesses_verified": witnessed}))
        else:
            rep = isomorphism_report(forms.standard_quadratic(fld, n, ODD), cfg)
            ok = rep["radical_dim"] == 1 and rep["bijective"] and rep["violations"] == 0
            out.append(Check("theorem1", name, ok, {"cell": f"Sp({n - 1})", **rep}))
    return out


ORDER_CASES = [(2, q, t) for q in (2, 3, 4, 5) for t in (PLUS, MINUS)] + [(4, q, t) for q in (2, 3) for t in (PLUS, MINUS)]


def suite_orders(cfg: Config) -> list[Check]:
    out = []
    for n, q, tag in ORDER_CASES + [(6, 2, PLUS)]:
        formula = groups.orthogonal_even_order(q, n // 2, 1 if tag is PLUS else -1)
        enumerated = len(_group(q, n, tag, cfg))
        api = groups.group_order("O", tag, n, _field(q), budget=cfg.budget)
        ok = formula == enumerated == api
        if (n, q) == (6, 2):
            ok = ok and formula == 40320
        out.append(Check("orders", f"O{_tag_name(tag)}({n},{q})", ok,
                         {"formula": formula, "enumerated": enumerated}))
    return out


def suite_classes(cfg: Config, samples: int = 200) -> list[Check]:
    """Random nonsingular forms fall into exactly two classes, separated by the witness."""
    out = []
    for n, q in itertools.product((2, 4), (2, 3, 5)):
        fld = _field(q)
        rng = cfg.rng("classes", n, q)
        reps: dict = {}
        within = True
        members = []
        for _ in range(samples):
            f = random_form(fld, n, rng)
            cls = forms.classify(f)
            rep = reps.setdefault(cls, f)
            within &= _witness_ok(f, rep)
            members.append((cls, f))
        across = True
        if len(reps) == 2:
            for cls, f in members:
                other = next(r for c, r in reps.items() if c != cls)
                across &= forms.equivalence_witness(f, other) is None
        ok = len(reps) == 2 and within and across
        out.append(Check("classes", f"n={n} q={q}", ok, {
            "forms": samples, "classes": len(reps), "witness_within": within, "witness_fails_across": across}))
    return out


def suite_isotropy(cfg: Config) -> list[Check]:
    out = []
    for q in (3, 5, 7, 9, 11, 13):
        fld = _field(q)
        for label, c, expect in (("diag(1,1)", 1, q % 4 == 1), ("diag(1,alpha)", fld.nonsquare, q % 4 == 3)):
            f = BilinearForm.diagonal(fld, [1, c])
            found = forms.find_isotropic_vector(f) is not None
            # brute force: x^2 + c y^2 = 0 with (x, y) != 0
            brute = any(fld.add(fld.mul(x, x), fld.mul(c, fld.mul(y, y))) == 0
                        for x in range(fld.q) for y in range(fld.q) if x or y)
            out.append(Check("isotropy", f"q={q} {label}", found == expect == brute,
                             {"isotropic": found, "expected": expect}))
    return out


DICKSON_CASES = [(2, 3), (2, 5), (4, 3)]
CHAR2_EVEN_CASES = [(2, 2), (2, 4), (4, 2)]


def suite_dickson(cfg: Config) -> list[Check]:
    out = []
    for (n, q), tag in itertools.product(DICKSON_CASES + CHAR2_EVEN_CASES, (PLUS, MINUS)):
        G = _group(q, n, tag, cfg)
        D = G.dickson
        violations = G.homomorphism_violations(D)
        minus = G.field.neg(1)
        det_ok = bool(np.all(G.det == np.where(D == 0, 1, minus)))
        ok = violations == 0 and det_ok
        out.append(Check("dickson", f"O{_tag_name(tag)}({n},{q})", ok, {
            "order": len(G), "pairs": len(G) ** 2, "violations": violations, "det_equals_minus1_pow_D": det_ok}))
    return out


def suite_spinor(cfg: Config, factorizations: int = 100) -> list[Check]:
    out = []
    for (n, q), tag in itertools.product(DICKSON_CASES, (PLUS, MINUS)):
        G = _group(q, n, tag, cfg)
        so = G.det == 1
        sp = G.spinor
        violations = G.homomorphism_violations(sp, domain=so)
        kernel = int(np.count_nonzero(sp == 1))
        index = int(np.count_nonzero(so)) // kernel
        rng = cfg.rng("spinor", n, q, tag.value)
        so_idx = np.flatnonzero(so).tolist()
        sample = so_idx if len(so_idx) <= factorizations else rng.sample(so_idx, factorizations)
        invariant = 0
        for i in sample:
            g = G.element(i)
            order = list(range(n))
            rng.shuffle(order)
            invariant += groups.spinor_norm(g, order) == groups.spinor_norm(g)
        ok = violations == 0 and index == 2 and invariant == len(sample)
        out.append(Check("spinor", f"SO{_tag_name(tag)}({n},{q})", ok, {
            "so_order": int(np.count_nonzero(so)), "kernel_index": index, "violations": violations,
            "factorizations_checked": len(sample), "factorization_invariant": invariant}))
    return out


THEOREM_COMMUTATOR = [(4, 2, MINUS), (2, 4, PLUS), (2, 4, MINUS)]
REPORTED_COMMUTATOR = [(2, 2, PLUS), (2, 2, MINUS), (2, 3, PLUS), (2, 3, MINUS), (4, 2, PLUS)]


def suite_commutator(cfg: Config) -> list[Check]:
    out = []
    for n, q, tag in THEOREM_COMMUTATOR + REPORTED_COMMUTATOR:
        G = _group(q, n, tag, cfg)
        rep, sub = groups.commutator_subgroup(G, budget=cfg.budget)
        omega = int(np.count_nonzero(groups.omega_mask(G)))
        asserted = (n, q, tag) in THEOREM_COMMUTATOR
        # small cases outside the theorem are reported, not judged
        ok = bool(rep.matches_omega) if asserted else True
        out.append(Check("commutator", f"O{_tag_name(tag)}({n},{q})", ok, {
            "order": len(G), "commutator_order": len(sub), "omega_order": omega,
            "equal": rep.matches_omega, "asserted": asserted}))
    return out


CDK_CASES = [(2, 2, PLUS), (2, 2, MINUS), (2, 4, PLUS), (2, 4, MINUS), (2, 8, PLUS), (2, 8, MINUS),
             (4, 2, PLUS), (4, 2, MINUS), (4, 4, PLUS), (4, 4, MINUS),
             (3, 2, ODD), (3, 4, ODD), (3, 8, ODD), (5, 2, ODD)]


def suite_cdk_exception(cfg: Config) -> list[Check]:
    """Orthogonal transvections generate O(Q) except for the plus type over F_2 in dimension 4."""
    out = []
    for n, q, tag in CDK_CASES:
        G = _group(q, n, tag, cfg)
        gens = groups.transvections_of(G.form)
        H = groups.subgroup_generated(gens, form=G.form, budget=cfg.budget)
        subset = bool(np.all(G.table.lookup(H.table.cols) >= 0))
        exception = (n, q, tag) == (4, 2, PLUS)
        full = len(H) == len(G)
        ok = subset and (full != exception)
        out.append(Check("cdk-exception", f"O{_tag_name(tag)}({n},{q})", ok, {
            "order": len(G), "closure_order": len(H), "index": len(G) // len(H),
            "proper_subgroup": not full}))
    return out


def suite_sp_isomorphism(cfg: Config) -> list[Check]:
    out = []
    for q, n in ((2, 3), (4, 3), (2, 5)):
        Q = forms.standard_quadratic(_field(q), n, ODD)
        rep = isomorphism_report(Q, cfg)
        ok = rep["radical_dim"] == 1 and rep["bijective"] and rep["violations"] == 0
        out.append(Check("sp-isomorphism", f"O({n},{q}) -> Sp({n - 1},{q})", ok, rep))
    # a random form as well, so the choice of complement is exercised
    rng = cfg.rng("sp-iso")
    Q = forms.random_nondegenerate_quadratic(_field(4), 3, rng)
    rep = isomorphism_report(Q, cfg)
    ok = rep["radical_dim"] == 1 and rep["bijective"] and rep["violations"] == 0
    out.append(Check("sp-isomorphism", "random O(3,4)", ok, rep))
    return out


def suite_arf(cfg: Config, bases: int = 5, random_forms: int = 10) -> list[Check]:
    out = []
    for q in (2, 4, 8):
        fld = _field(q)
        res = [arf_residue(FieldElement(fld, a)) for a in range(q)]
        additive = all(res[fld.add(a, b)] == (res[a] + res[b]) % 2 for a in range(q) for b in range(q))
        image = {fld.add(fld.mul(u, u), u) for u in range(q)}
        out.append(Check("arf", f"residue q={q}", additive and len(image) == q // 2 and
                         all((res[c] == 0) == (c in image) for c in range(q)),
                         {"additive": additive, "U_size": len(image)}))
        for n in (2, 4):
            rng = cfg.rng("arf", q, n)
            corpus = [forms.standard_quadratic(fld, n, t) for t in (PLUS, MINUS)]
            corpus += [forms.random_nondegenerate_quadratic(fld, n, rng) for _ in range(random_forms)]
            stable = plus_iff_zero = 0
            for Q in corpus:
                bit = forms.arf_invariant(Q)
                stable += all(forms.arf_invariant(Q, forms.random_symplectic_basis(Q.polar, rng)) == bit
                              for _ in range(bases))
                plus_iff_zero += (bit == 0) == (forms.witt_index(Q) == n // 2)
            ok = stable == plus_iff_zero == len(corpus)
            out.append(Check("arf", f"invariant q={q} n={n}", ok, {
                "forms": len(corpus), "basis_independent": stable, "zero_iff_plus": plus_iff_zero}))
    return out


def clifford_corpus(cfg: Config) -> list[QuadraticForm]:
    out = []
    for q, n in itertools.product((2, 3, 4, 5), (2, 3, 4)):
        fld = _field(q)
        tags = (ODD,) if n % 2 else (PLUS, MINUS)
        out += [forms.standard_quadratic(fld, n, t) for t in tags]
        rng = cfg.rng("clifford", q, n)
        if fld.p == 2:
            out.append(forms.random_nondegenerate_quadratic(fld, n, rng))
        else:
            out.append(forms.quadratic_from_bilinear(forms.random_symmetric_nonsingular(fld, n, rng)))
    return out


def suite_clifford(cfg: Config, triples: int = 500) -> list[Check]:
    out = []
    for Q in clifford_corpus(cfg):
        fld, n = Q.field, Q.n
        squares = 0
        for v in itertools.product(range(fld.q), repeat=n):
            e = clifford.embed_vector(Q, Vector(fld, v))
            squares += (e * e) == clifford.CliffordElement.scalar(Q, Q.value(v))
        rng = cfg.rng("clifford-assoc", fld.q, n, Q.upper.entries)
        assoc = 0
        for _ in range(triples):
            a, b, c = (clifford.random_element(Q, rng) for _ in range(3))
            assoc += (a * b) * c == a * (b * c)
        dim = clifford.algebra_dimension(Q)
        ok = squares == fld.q**n and assoc == triples and dim == 2**n
        out.append(Check("clifford", f"q={fld.q} n={n} Q={Q.upper.row_lists()}", ok, {
            "squares_ok": squares, "vectors": fld.q**n, "associative": assoc, "triples": triples, "dimension": dim}))
    return out


SUITES: dict[str, Callable[[Config], list[Check]]] = {
    "theorem1": suite_theorem1,
    "orders": suite_orders,
    "classes": suite_classes,
    "isotropy": suite_isotropy,
    "dickson": suite_dickson,
    "spinor": suite_spinor,
    "commutator": suite_commutator,
    "cdk-exception": suite_cdk_exception,
    "sp-isomorphism": suite_sp_isomorphism,
    "arf": suite_arf,
    "clifford": suite_clifford,
}


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "failures": [c.name for c in self.checks if not c.passed],
            "checks": [c.to_json() for c in self.checks],
        }


def run_suite(name: str, cfg: Optional[Config] = None) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    cfg = cfg or Config()
    t0 = time.perf_counter()
    checks = SUITES[name](cfg)
    return SuiteResult(name, checks, time.perf_counter() - t0)
