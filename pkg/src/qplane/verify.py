"""Axiom verification: evaluate both sides of each identity on a test set and
record failures with a witness."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import __version__
from .algebra import (
    Element,
    Presentation,
    check_local_confluence,
    degree_of,
    normalize,
    random_element,
)
from .hopf import (
    A_MAPS,
    BOREL_MAPS,
    BOREL_RENAMING,
    GAMMA_MAPS,
    MAPS,
    OMEGA_MAPS,
    StructureMaps,
    antipode,
    antipode_inverse_probe,
    borel_rename,
    borel_unrename,
    coaction_left,
    coaction_right,
    coproduct,
    counit,
    differential,
    embed_forms,
    rename_tensor,
)
from .presentations import BOREL, GAMMA, OMEGA, SHIPPED, A
from .render import render
from .tensor import (
    TensorElement,
    apply_in_slot,
    flatten_mul,
    scalar_flatten,
    tensor,
    tensor_multiply,
)


class UnknownAxiomError(KeyError):
    pass


@dataclass
class CheckResult:
    id: str
    paper_eq: str
    instances: int = 0
    failures: int = 0
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, witness: Callable[[], str] | str) -> None:
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = witness() if callable(witness) else witness

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "paper_eq": self.paper_eq,
            "instances": self.instances,
            "failures": self.failures,
            "witness": self.witness,
        }


@dataclass
class CheckReport:
    suite: str
    algebra: str
    seed: int
    checks: list = field(default_factory=list)
    informational: list = field(default_factory=list)
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "algebra": self.algebra,
            "seed": self.seed,
            "checks": [c.to_dict() for c in sorted(self.checks, key=lambda c: c.id)],
            "informational": self.informational,
            "pass": self.passed,
            "version": self.version,
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite} on {self.algebra} (seed {self.seed})"]
        for c in sorted(self.checks, key=lambda c: c.id):
            status = "PASS" if c.passed else "FAIL"
            lines.append(
                f"  {status} {c.id:<48} eq ({c.paper_eq})  {c.instances - c.failures}/{c.instances}"
            )
            if c.witness:
                lines.append(f"       witness: {c.witness}")
        for info in self.informational:
            lines.append("  info " + ", ".join(f"{k}={v}" for k, v in info.items()))
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


# ------------------------------------------------------------------ test sets


@dataclass
class TestSet:
    """Explicit elements plus ``n_random`` seeded random ones."""

    basis: list
    n_random: int = 0
    seed: int = 0
    random_max_len: int = 3
    random_terms: int = 3
    symbols: Sequence[str] | None = None

    __test__ = False  # not a pytest class

    def elements(self, p: Presentation, tag: str = "") -> list:
        out = list(self.basis)
        rng = random.Random(f"{self.seed}:{tag}:{p.name}")
        for _ in range(self.n_random):
            out.append(
                random_element(p, rng, self.random_max_len, self.random_terms, self.symbols)
            )
        return out


def word_basis(p: Presentation, max_len: int, symbols: Sequence[str] | None = None) -> list:
    """Normal forms of every free word of length <= max_len (deduplicated)."""
    seen = {}
    names = symbols or p.generator_names
    import itertools

    for n in range(max_len + 1):
        for w in itertools.product(names, repeat=n):
            e = normalize(Element({w: 1}, p), p)
            if e:
                seen.setdefault(render(e), e)
    return list(seen.values())


def qplane_basis(p: Presentation, max_a: int = 2, max_b: int = 4) -> list:
    """Canonical words ``x^a y^b`` with ``|a| <= max_a`` and ``0 <= b <= max_b``."""
    x, xi, y = p.generator_names
    out = []
    for a in range(-max_a, max_a + 1):
        head = (x,) * a if a >= 0 else (xi,) * (-a)
        for b in range(max_b + 1):
            out.append(Element({head + (y,) * b: 1}, p))
    return out


def first_order_basis() -> list:
    """``u * dv`` with ``u`` in {1, x, xi, y} and ``v`` in {x, y}, in Gamma."""
    out = []
    for u in ((), ("x",), ("xi",), ("y",)):
        for dv in ("dx", "dy"):
            out.append(normalize(Element({u + (dv,): 1}, GAMMA)))
    return out


# ------------------------------------------------------------------ axioms


def _maps_for(algebra) -> StructureMaps:
    if isinstance(algebra, StructureMaps):
        return algebra
    if isinstance(algebra, Presentation):
        return MAPS[algebra.name]
    return MAPS[algebra]


def _fmt(e) -> str:
    return render(e)


def _coassociativity(m: StructureMaps, e: Element, res: CheckResult) -> None:
    d = coproduct(e, m)
    f = lambda u: coproduct(u, m)
    lhs = apply_in_slot(f, 1, d)
    rhs = apply_in_slot(f, 2, d)
    res.record(lhs == rhs, lambda: f"{_fmt(e)}: {_fmt(lhs)} != {_fmt(rhs)}")


def _counit_law(m: StructureMaps, e: Element, res: CheckResult) -> None:
    d = coproduct(e, m)
    eps = lambda u: counit(u, m)
    left = scalar_flatten(apply_in_slot(eps, 1, d))
    right = scalar_flatten(apply_in_slot(eps, 2, d))
    res.record(left == e and right == e, lambda: f"{_fmt(e)}: {_fmt(left)} / {_fmt(right)}")


def _antipode_law(m: StructureMaps, e: Element, res: CheckResult) -> None:
    d = coproduct(e, m)
    s = lambda u: antipode(u, m)
    left = flatten_mul(apply_in_slot(s, 1, d))
    right = flatten_mul(apply_in_slot(s, 2, d))
    expected = Element.unit(m.algebra, counit(e, m))
    res.record(
        left == expected and right == expected,
        lambda: f"{_fmt(e)}: {_fmt(left)} / {_fmt(right)} vs {_fmt(expected)}",
    )


def _graded_sign_witness(m: StructureMaps, res: CheckResult) -> None:
    p = m.algebra
    for lhs, rule in p.rules.items():
        if lhs[0] == lhs[1] and not rule.rhs:
            d = coproduct(Element.gen(lhs[0], p), m)
            sq = tensor_multiply(d, d, koszul=m.koszul)
            res.record(sq.is_zero(), lambda: f"Delta({lhs[0]})^2 = {_fmt(sq)}")


def _relations(p: Presentation):
    for lhs, rule in p.rules.items():
        yield Element({lhs: 1}, p), Element(dict(rule.rhs), p), rule


def _respects(apply: Callable, p: Presentation, res: CheckResult) -> None:
    for lhs, rhs, rule in _relations(p):
        diff = apply(lhs) - apply(rhs)
        res.record(not diff, lambda: f"rule {rule}: image difference {_fmt(diff)}")


def _right_comodule(e: Element, res: CheckResult) -> None:
    r = coaction_right(e)
    lhs = apply_in_slot(coaction_right, 1, r)
    rhs = apply_in_slot(lambda u: coproduct(u, A_MAPS), 2, r)
    unit_law = scalar_flatten(apply_in_slot(lambda u: counit(u, A_MAPS), 2, r))
    res.record(lhs == rhs and unit_law == e, lambda: f"{_fmt(e)}: {_fmt(lhs)} != {_fmt(rhs)}")


def _left_comodule(e: Element, res: CheckResult) -> None:
    l = coaction_left(e)
    lhs = apply_in_slot(coaction_left, 2, l)
    rhs = apply_in_slot(lambda u: coproduct(u, A_MAPS), 1, l)
    unit_law = scalar_flatten(apply_in_slot(lambda u: counit(u, A_MAPS), 1, l))
    res.record(lhs == rhs and unit_law == e, lambda: f"{_fmt(e)}: {_fmt(lhs)} != {_fmt(rhs)}")


def _bicomodule(e: Element, res: CheckResult) -> None:
    lhs = apply_in_slot(coaction_left, 1, coaction_right(e))
    rhs = apply_in_slot(coaction_right, 2, coaction_left(e))
    res.record(lhs == rhs, lambda: f"{_fmt(e)}: {_fmt(lhs)} != {_fmt(rhs)}")


def _d_comodule_map(e: Element, res: CheckResult) -> None:
    de = differential(e)
    left_ok = coaction_left(de) == apply_in_slot(differential, 2, coaction_left(e), parity=1)
    right_ok = coaction_right(de) == apply_in_slot(differential, 1, coaction_right(e), parity=1)
    res.record(left_ok and right_ok, lambda: f"{_fmt(e)} (left {left_ok}, right {right_ok})")


def _d_squared(e: Element, res: CheckResult) -> None:
    dd = differential(differential(e))
    res.record(dd.is_zero(), lambda: f"d(d({_fmt(e)})) = {_fmt(dd)}")


def _leibniz(a: Element, b: Element, res: CheckResult) -> None:
    deg = degree_of(a)
    lhs = differential(a * b)
    da_b = differential(a) * b
    a_db = a * differential(b)
    rhs = da_b - a_db if deg % 2 else da_b + a_db
    res.record(lhs == rhs, lambda: f"a={_fmt(a)}, b={_fmt(b)}: {_fmt(lhs)} != {_fmt(rhs)}")


def _embed_tensor(t: TensorElement) -> TensorElement:
    out = TensorElement.zero((GAMMA, GAMMA))
    for (w1, w2), c in t.terms.items():
        out = out + tensor(
            embed_forms(Element({w1: c}, OMEGA)), embed_forms(Element({w2: 1}, OMEGA))
        )
    return out


def _forms_costructure(e: Element, res: CheckResult) -> None:
    g = embed_forms(e)
    ok_d = coproduct(g, GAMMA_MAPS) == _embed_tensor(coproduct(e, OMEGA_MAPS))
    ok_e = counit(g, GAMMA_MAPS) == counit(e, OMEGA_MAPS)
    ok_s = antipode(g, GAMMA_MAPS) == embed_forms(antipode(e, OMEGA_MAPS))
    res.record(ok_d and ok_e and ok_s, lambda: f"{_fmt(e)} (Delta {ok_d}, eps {ok_e}, S {ok_s})")


def _borel_functoriality(e: Element, res: CheckResult) -> None:
    b = borel_rename(e)
    ok = (
        b.is_canonical()
        and borel_unrename(b) == e
        and rename_tensor(coproduct(e, A_MAPS), BOREL_RENAMING, BOREL) == coproduct(b, BOREL_MAPS)
        and counit(e, A_MAPS) == counit(b, BOREL_MAPS)
        and borel_rename(antipode(e, A_MAPS)) == antipode(b, BOREL_MAPS)
    )
    res.record(ok, lambda: _fmt(e))


_RELATION_EQ = {"A": "1", "Gamma": "15-16", "Omega": "36-37", "Borel": "46"}
_HOPF_EQ = {"A": "", "Gamma": "23-34", "Omega": "38-40", "Borel": "46"}

# axiom id -> (equation tag, kind)
AXIOMS = {
    "coassociativity": ("3", "element"),
    "counit-law": ("5", "element"),
    "antipode-law": ("8", "element"),
    "coproduct-respects-relations": (None, "relations"),
    "counit-respects-relations": (None, "relations"),
    "antipode-respects-relations": (None, "relations"),
    "graded-sign-witness": (None, "relations"),
    "right-comodule": ("20", "gamma"),
    "left-comodule": ("22", "gamma"),
    "bicomodule-compatibility": ("25", "gamma"),
    "d-is-comodule-map": ("26", "gamma"),
    "d-squared-zero": ("13", "gamma"),
    "graded-leibniz": ("14", "pairs"),
    "d-respects-relations": ("12-16", "relations"),
    "coaction-relation-invariance": ("15-16", "relations"),
    "forms-embedding": ("35-37", "relations"),
    "forms-costructure": ("35-40", "omega"),
    "borel-functoriality": ("46", "A"),
}


def verify_axiom(name: str, algebra, test_set: TestSet | None = None) -> CheckResult:
    """Evaluate the named identity on ``test_set`` (ignored for
    relation-based checks, which run over every rewrite rule)."""
    if name not in AXIOMS:
        raise UnknownAxiomError(name)
    maps = _maps_for(algebra)
    p = maps.algebra
    eq, kind = AXIOMS[name]
    if eq is None:
        eq = _RELATION_EQ.get(p.name, "")
    if name in ("coassociativity", "counit-law", "antipode-law") and p.name != "A":
        eq = f"{eq}; {_HOPF_EQ[p.name]}"
    res = CheckResult(f"{p.name}:{name}", eq)
    elems = test_set.elements(p, name) if test_set is not None else []

    if name == "coassociativity":
        for e in elems:
            _coassociativity(maps, e, res)
    elif name == "counit-law":
        for e in elems:
            _counit_law(maps, e, res)
    elif name == "antipode-law":
        for e in elems:
            _antipode_law(maps, e, res)
    elif name == "coproduct-respects-relations":
        _respects(lambda u: coproduct(u, maps), p, res)
    elif name == "counit-respects-relations":
        _respects(lambda u: Element.unit(p, counit(u, maps)), p, res)
    elif name == "antipode-respects-relations":
        _respects(lambda u: antipode(u, maps), p, res)
    elif name == "graded-sign-witness":
        _graded_sign_witness(maps, res)
    elif name == "d-respects-relations":
        _require(p, GAMMA, name)
        _respects(differential, p, res)
    elif name == "coaction-relation-invariance":
        _require(p, GAMMA, name)
        _respects(coaction_right, p, res)
        _respects(coaction_left, p, res)
    elif name == "forms-embedding":
        _require(p, OMEGA, name)
        _respects(embed_forms, p, res)
    elif name == "forms-costructure":
        _require(p, OMEGA, name)
        for e in elems:
            _forms_costructure(e, res)
    elif name == "borel-functoriality":
        _require(p, A, name)
        for e in elems:
            _borel_functoriality(e, res)
    elif name == "graded-leibniz":
        _require(p, GAMMA, name)
        rng = random.Random(f"{test_set.seed if test_set else 0}:leibniz")
        n = test_set.n_random if test_set else 0
        for _ in range(n):
            a = random_element(GAMMA, rng, 3, 2, degree=rng.choice([0, 1]))
            b = random_element(GAMMA, rng, 3, 2, degree=rng.choice([0, 1]))
            if degree_of(a) is None:
                a = Element.gen("x", GAMMA)
            _leibniz(a, b, res)
    else:
        _require(p, GAMMA, name)
        fn = {
            "right-comodule": _right_comodule,
            "left-comodule": _left_comodule,
            "bicomodule-compatibility": _bicomodule,
            "d-is-comodule-map": _d_comodule_map,
            "d-squared-zero": _d_squared,
        }[name]
        for e in elems:
            fn(e.with_presentation(GAMMA) if e.presentation is A else e, res)
    return res


def _require(p: Presentation, want: Presentation, name: str) -> None:
    if p is not want:
        raise ValueError(f"axiom {name} is defined on {want.name}, not {p.name}")


# ------------------------------------------------------------------ suites

SUITES = ("all", "hopf-A", "diff-gamma", "bicovariance", "forms", "borel", "confluence")


def _hopf_checks(maps: StructureMaps, ts: TestSet) -> list:
    names = [
        "coassociativity", "counit-law", "antipode-law",
        "coproduct-respects-relations", "counit-respects-relations",
        "antipode-respects-relations",
    ]
    return [verify_axiom(n, maps, ts) for n in names]


def _probe_info() -> list:
    out = []
    for g in ("x", "y"):
        r = antipode_inverse_probe(g)
        out.append({
            "id": f"A:antipode-inverse[{g}]",
            "paper_eq": "7",
            "derived_q_exponent": r.exponent,
            "printed_q_exponent": r.printed_exponent,
            "agrees": r.agrees,
            "inverse_image": render(r.inverse_image),
            "antipode_squared": render(r.antipode_squared),
        })
    return out


def suite_hopf_a(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    ts = TestSet(qplane_basis(A, 2, max_degree), n_random, seed)
    return _hopf_checks(A_MAPS, ts), _probe_info()


def suite_diff_gamma(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    ts = TestSet(word_basis(GAMMA, 3), n_random, seed)
    checks = _hopf_checks(GAMMA_MAPS, ts)
    checks.append(verify_axiom("d-squared-zero", GAMMA, TestSet(word_basis(GAMMA, max_degree), n_random, seed)))
    checks.append(verify_axiom("graded-leibniz", GAMMA, TestSet([], max(2 * n_random, 100), seed)))
    checks.append(verify_axiom("d-respects-relations", GAMMA))
    checks.append(verify_axiom("graded-sign-witness", GAMMA))
    return checks, []


def suite_bicovariance(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    basis = first_order_basis() + word_basis(GAMMA, 2)
    ts = TestSet(basis, n_random, seed)
    checks = [
        verify_axiom(n, GAMMA, ts)
        for n in ("right-comodule", "left-comodule", "bicomodule-compatibility", "d-is-comodule-map")
    ]
    # d as a comodule map with u ranging over A
    lit = verify_axiom("d-is-comodule-map", GAMMA, TestSet(
        [e.with_presentation(GAMMA) for e in qplane_basis(A, 2, max_degree)], 0, seed))
    lit.id = "Gamma:d-is-comodule-map[A]"
    checks.append(lit)
    checks.append(verify_axiom("coaction-relation-invariance", GAMMA))
    return checks, []


def suite_forms(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    ts = TestSet(word_basis(OMEGA, 3), n_random, seed)
    checks = _hopf_checks(OMEGA_MAPS, ts)
    checks.append(verify_axiom("graded-sign-witness", OMEGA))
    checks.append(verify_axiom("forms-embedding", OMEGA))
    checks.append(verify_axiom("forms-costructure", OMEGA, ts))
    return checks, []


def suite_borel(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    ts = TestSet(qplane_basis(BOREL, 2, max_degree), n_random, seed)
    checks = _hopf_checks(BOREL_MAPS, ts)
    checks.append(verify_axiom("borel-functoriality", A, TestSet(qplane_basis(A, 2, max_degree), n_random, seed)))
    return checks, []


def suite_confluence(max_degree: int, seed: int, n_random: int) -> tuple[list, list]:
    checks = []
    for name, p in SHIPPED.items():
        rep = check_local_confluence(p)
        res = CheckResult(f"{name}:local-confluence", _RELATION_EQ[name])
        for cp in rep.pairs:
            res.record(
                cp.convergent,
                lambda cp=cp: f"{'*'.join(cp.word)}: {_fmt(cp.left)} vs {_fmt(cp.right)}",
            )
        checks.append(res)
    return checks, []


_SUITE_FUNCS = {
    "hopf-A": (suite_hopf_a, "A"),
    "diff-gamma": (suite_diff_gamma, "Gamma"),
    "bicovariance": (suite_bicovariance, "Gamma"),
    "forms": (suite_forms, "Omega"),
    "borel": (suite_borel, "Borel"),
    "confluence": (suite_confluence, "all"),
}


def run_suite(suite: str, max_degree: int = 4, seed: int = 0, n_random: int = 50) -> CheckReport:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; expected one of {SUITES}")
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    names = [s for s in SUITES if s != "all"] if suite == "all" else [suite]
    algebra = "all" if suite == "all" else _SUITE_FUNCS[suite][1]
    report = CheckReport(suite, algebra, seed)
    for name in names:
        fn, _ = _SUITE_FUNCS[name]
        checks, info = fn(max_degree, seed, n_random)
        report.checks.extend(checks)
        report.informational.extend(info)
    return report
