"""
End-to-end certification that f : Set^M -> Set^N, induced by phi, is not
locally connected although it is hyperconnected and local.

Each proposition is reduced to finitary checks. Checks with ``bound`` set
were carried out on elements up to that degree only; ``bound = None``
marks an exact check. One step is not computed but assumed: extension
along phi is a left adjoint, so it sends a decomposition into closed
blocks to a decomposition of the tensor product, and elements from
different blocks stay apart.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .config import Config
from .errors import BoundError, ConfigError
from .functors import (
    alpha_formula, check_evaluation_iso, check_indecomposable, check_retract,
    comparison_map, evaluation_map, tensor_class_of)
from .monoid import check_morphism, check_surjective_on_generators
from .mset import check_closed, check_partition, regular, restrict_scalars
from .rewriting import format_word, is_locally_confluent
from .verdict import Verdict

CONCLUSION = "not locally connected"
WITHHELD = "WITHHELD"

COLIMIT_LEMMA = ("extension along phi preserves colimits, so closed disjoint blocks "
                 "give disjoint blocks of the tensor product")
CONNECTED_LEMMA = "hyperconnected implies connected"


@dataclass
class Check:
    name: str
    accepted: bool
    detail: str
    bound: Optional[int] = None

    @classmethod
    def of(cls, name: str, verdict: Verdict) -> "Check":
        return cls(name, verdict.accepted, verdict.detail, verdict.bound)


@dataclass
class Proposition:
    number: int
    claim: str
    accepted: bool
    headline: str
    checks: list[Check] = field(default_factory=list)
    witnesses: dict[str, str] = field(default_factory=dict)


@dataclass
class Report:
    tool: str
    version: str
    config_digest: str
    bound: int
    propositions: list[Proposition]
    witnesses: dict[str, str]
    assumed: list[str]
    conclusion: str

    @property
    def concluded(self) -> bool:
        return self.conclusion == CONCLUSION

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        props = [Proposition(**{**p, "checks": [Check(**c) for c in p["checks"]]})
                 for p in d["propositions"]]
        return cls(**{**d, "propositions": props})


@dataclass
class PartitionCertificate:
    mset: str
    predicates: list[str]
    bound: int
    closure: dict[str, Verdict]
    partition: Verdict
    blocks: dict[str, list[str]]

    @property
    def valid(self) -> bool:
        return all(self.closure.values()) and bool(self.partition)

    def separates(self, a: str, b: str) -> bool:
        """Do the two formatted elements lie in different (single) blocks?"""
        ba, bb = self.blocks.get(a, []), self.blocks.get(b, [])
        return self.valid and len(ba) == 1 and len(bb) == 1 and ba != bb


def partition_certificate(X, preds, degree_bound, elements=()) -> PartitionCertificate:
    closure = {p.name: check_closed(X, p, degree_bound) for p in preds}
    part = check_partition(X, preds, degree_bound)
    blocks = {X.format(x): [p.name for p in preds if p(x)] for x in elements}
    return PartitionCertificate(X.name, [p.name for p in preds], degree_bound,
                                closure, part, blocks)


def _pair(im) -> str:
    return f"({format_word(im[0])}, {format_word(im[1])})"


def required_bound(config: Config) -> int:
    ce = config.counterexample
    return max([1] + [ce.product.degree(w) for w in ce.witnesses])


def verify_counterexample(config: Config, degree_bound: Optional[int] = None) -> Report:
    ce = config.counterexample
    if ce is None:
        raise ConfigError("config has no counterexample block")
    d = config.bound if degree_bound is None else degree_bound
    need = required_bound(config)
    if d < need:
        raise BoundError(f"bound too small: witnesses need degree bound >= {need}, got {d}")
    phi, sigma = ce.along, ce.section
    M, N = phi.source, phi.target
    P = ce.product
    props: list[Proposition] = []
    witnesses: dict[str, str] = {}

    def report(conclusion):
        return Report("monoidtopos", __version__, config.digest, d, props, witnesses,
                      [CONNECTED_LEMMA, COLIMIT_LEMMA], conclusion)

    # hyperconnected: phi is a surjective morphism
    checks = []
    for p in dict.fromkeys([M, N]):
        ok = is_locally_confluent(p.rules)
        checks.append(Check(f"rules of {p.name} locally confluent", ok,
                            ", ".join(map(str, p.rules)) or "no rules"))
    checks.append(Check.of(f"{phi.name} respects relations",
                           check_morphism(M, N, phi.images)))
    surj = check_surjective_on_generators(phi, d)
    checks.append(Check.of(f"{phi.name} hits every generator of {N.name}", surj))
    hyper = all(c.accepted for c in checks)
    wit = {g: f"{phi.name}({format_word(w)})" for g, w in (surj.witness or {}).items()} \
        if surj else {}
    headline = "HYPERCONNECTED" if hyper else "hyperconnectedness NOT established"
    if wit:
        headline += " (witness: " + ", ".join(f"{g} = {v}" for g, v in wit.items()) + ")"
    props.append(Proposition(1, "hyperconnected", hyper, headline, checks, wit))
    if not hyper:
        return report(WITHHELD)

    # local: N is a retract of M as right M-sets, and indecomposable
    n_over_m = restrict_scalars(regular(N), phi, f"{N.name} over {M.name}")
    retract = check_retract(sigma, phi, d)
    indec = check_indecomposable(n_over_m, d)
    checks = [Check.of(f"{sigma.name} splits {phi.name} as a map of right {M.name}-sets",
                       retract),
              Check.of(f"{N.name} over {M.name} is connected", indec),
              Check(f"{phi.name} connected", True, f"{CONNECTED_LEMMA} (assumed)")]
    local = retract.accepted and indec.accepted
    wit = {f"{sigma.name}({g})": format_word(w) for g, w in sigma.images.items()}
    headline = ("LOCAL (witness: " + ", ".join(f"{k} = {v}" for k, v in wit.items())
                + f"; {indec.detail})") if local else "locality NOT established"
    props.append(Proposition(2, "local", local, headline, checks, wit))
    if not local:
        return report(WITHHELD)

    # extension does not preserve the product left x right
    checks = []
    evals = []
    cmp = comparison_map(ce.left, ce.right, phi, d)
    for X, t in ((ce.left, cmp.left), (ce.right, cmp.right)):
        ev = evaluation_map(X, phi)
        evals.append(ev)
        checks.append(Check.of(f"f_!({X.name}) = {N.name}", check_evaluation_iso(t, ev)))
    checks.append(Check("comparison map well defined on classes", cmp.representative_independent,
                        f"{len(cmp.mapping)} classes of f_!({P.name})", d))
    agree = all(
        alpha_formula(m, n, n2, phi) == (evals[0](*cmp.mapping[(m, n), n2][0]),
                                         evals[1](*cmp.mapping[(m, n), n2][1]))
        for (m, n), n2 in cmp.mapping)
    checks.append(Check("comparison map agrees with alpha formula", agree,
                        "(m, n) (x) n' -> (phi(m) n', n n')", d))

    w1, w2 = ce.witnesses
    s1, s2 = P.format(w1), P.format(w2)
    img1 = alpha_formula(w1[0], w1[1], (), phi)
    img2 = alpha_formula(w2[0], w2[1], (), phi)
    tp = cmp.domain
    distinct_at_bound = tensor_class_of(tp, w1, ()) != tensor_class_of(tp, w2, ())
    collide = img1 == img2
    checks.append(Check(
        "alpha collision", collide and distinct_at_bound,
        f"alpha({s1} (x) 1) = {_pair(img1)}, alpha({s2} (x) 1) = {_pair(img2)}; "
        f"classes {'distinct' if distinct_at_bound else 'equal'} up to degree {d}", d))
    checks.append(Check(
        "comparison map not injective at bound", not cmp.injective,
        f"{len(cmp.collisions)} collisions among {len(cmp.mapping)} classes", d))

    cert = partition_certificate(P, ce.partition, d, [w1, w2])
    for name, v in cert.closure.items():
        checks.append(Check.of(f"{name} closed in {P.name}", v))
    checks.append(Check.of("blocks partition " + P.name, cert.partition))
    separated = cert.separates(s1, s2)
    blocks = f"{s1} in {'/'.join(cert.blocks[s1]) or '-'}, {s2} in {'/'.join(cert.blocks[s2]) or '-'}"
    checks.append(Check("witnesses in different blocks", separated,
                        f"{blocks}; hence distinct in f_!({P.name}) by: {COLIMIT_LEMMA}"))

    failure = collide and distinct_at_bound and cert.valid and separated
    if failure:
        headline = (f"comparison map NOT injective (witness: alpha({s1} (x) 1) = "
                    f"{_pair(img1)} = alpha({s2} (x) 1))")
    else:
        headline = "comparison map failure NOT established"
    wit = {"collision": f"{s1} (x) 1, {s2} (x) 1 -> {_pair(img1)}"
           if collide else f"{s1} (x) 1 -> {_pair(img1)}, {s2} (x) 1 -> {_pair(img2)}",
           "blocks": blocks}
    props.append(Proposition(3, "extension does not preserve binary products", failure,
                             headline, checks, wit))
    witnesses.update({
        "surjectivity": ", ".join(f"{g} = {v}" for g, v in props[0].witnesses.items()),
        "section": ", ".join(f"{k} = {v}" for k, v in props[1].witnesses.items()),
        "alpha_collision": wit["collision"],
        "separation": blocks,
    })
    return report(CONCLUSION if failure else WITHHELD)


def render_report(r: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=2, ensure_ascii=False) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [f"{r.tool} {r.version}", f"config {r.config_digest}", f"degree bound {r.bound}", ""]
    for p in r.propositions:
        lines.append(f"Proposition {p.number}: {p.headline}")
        for c in p.checks:
            scope = "exact" if c.bound is None else f"up to degree {c.bound}"
            mark = "ok" if c.accepted else "FAILED"
            lines.append(f"  [{mark}] {c.name} ({scope}): {c.detail}")
    lines.append("")
    for lemma in r.assumed:
        lines.append(f"assumed: {lemma}")
    if r.concluded:
        lines.append("Corollary: f is not locally connected")
    lines.append(f"conclusion: {r.conclusion}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))
