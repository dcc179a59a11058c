from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from riesz_lab.diagnostics.am import am_identity_check, canonical_pair
from riesz_lab.diagnostics.families import FamilyKind, SequenceFamily
from riesz_lab.diagnostics.levi import levi_probe
from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.rational import format_rational
from riesz_lab.operators.sequence import Monotonicity
from riesz_lab.spaces.boundedness import gauge
from riesz_lab.spaces.elements import element_join, embed
from riesz_lab.spaces.tags import Element, NeighborhoodSpec, ProductElement, SpaceTag, make_product
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.sampling import RationalSampler, derive_seed
from riesz_lab.utils.types import NOTSET, ArgNotSet

PROBE_KINDS = ("am", "levi")


@dataclass(frozen=True)
class _ProductAM:
    holds: bool
    checked: int
    witness: dict | None = None


def _product_am(tag: SpaceTag, trials: int, seed: int) -> _ProductAM:
    """Gauge version of the AM identity on the product, with every factor in its unit ball.

    gauge(x v y) == max(gauge(x), gauge(y)) is checked on the canonical pair of every factor, embedded in
    the product, and on ``trials`` random positive product pairs.
    """
    U = NeighborhoodSpec.all_factors(tag)
    sampler = RationalSampler(seed)

    def pairs() -> Iterable[tuple[int | None, Element, Element]]:
        for i, factor in enumerate(tag.factors):
            pair = canonical_pair(factor)
            if pair is not None:
                yield i, embed(pair[0], i, tag), embed(pair[1], i, tag)
        for _ in range(trials):
            yield None, sampler.sample(tag, positive=True), sampler.sample(tag, positive=True)

    checked = 0
    for factor, x, y in pairs():
        denominator = max(gauge(x, U, tag), gauge(y, U, tag))
        if denominator == 0:
            continue
        ratio = gauge(element_join(x, y), U, tag) / denominator
        checked += 1
        if ratio != 1:
            return _ProductAM(False, checked, {"factor": factor, "x": x, "y": y, "ratio": ratio})
    return _ProductAM(True, checked)


def _product_family(families: Sequence[SequenceFamily]) -> SequenceFamily:
    tag = make_product([fam.space for fam in families])
    limits = [fam.limit for fam in families]
    bounds = [fam.norm_bound for fam in families]
    return SequenceFamily(
        name=" x ".join(fam.name for fam in families),
        kind=FamilyKind.custom,
        generator=lambda k: ProductElement(fam.term(k) for fam in families),
        order_claim=Monotonicity.increasing,
        space=tag,
        limit=None if None in limits else ProductElement(limits),
        norm_bound=None if None in bounds else max(bounds),
        k_max=min((fam.k_max for fam in families if fam.k_max is not None), default=None),
    )


def _supremum_of(report: ProbeReport):
    if report.verdict != ProbeVerdict.holds or not report.witnesses:
        return None
    return report.witnesses[0].get("supremum")


def product_preservation_check(
    tags: Sequence[SpaceTag] | None = None,
    probe: str = "am",
    *,
    families: Sequence[SequenceFamily] | None = None,
    K: int = 16,
    trials: int | ArgNotSet = NOTSET,
    seed: int = 0,
) -> ProbeReport:
    """Run the AM or Levi probe factorwise and on the product, and compare.

    am: ``am_identity_check`` on each factor tag and the gauge AM identity on the product; a failing
    product carries the factor's witness embedded in the product.

    levi: ``levi_probe`` on each family and on the product family k -> (u_k of every factor); the product
    supremum must be the tuple of the factor suprema.

    The verdict is the product's own verdict when it agrees with the conjunction of the factor verdicts,
    inconclusive otherwise.
    """
    if probe not in PROBE_KINDS:
        raise ValueError(f"probe must be one of {', '.join(PROBE_KINDS)}, got {probe!r}")
    if trials is NOTSET:
        trials = Configuration.RIESZ_LAB_TRIALS
    if probe == "am":
        if not tags:
            raise ValueError("The am product check needs at least one factor tag")
        return _am_preservation(list(tags), trials, seed)
    if not families:
        raise ValueError("The levi product check needs one family per factor")
    return _levi_preservation(list(families), K, seed)


def _report(verdict: ProbeVerdict, witnesses: list, notes: list[str], seed: int) -> ProbeReport:
    return ProbeReport("product_preservation_check", verdict, witnesses, notes=notes, seed=seed)


def _am_preservation(tags: list[SpaceTag], trials: int, seed: int) -> ProbeReport:
    product = make_product(tags)
    factor_reports = [
        am_identity_check(tag, trials=trials, seed=derive_seed(seed, "factor", i))
        for i, tag in enumerate(tags)
    ]
    product_am = _product_am(product, trials, derive_seed(seed, "product"))
    notes = [
        f"factor {i} ({tag.label}): {r.verdict.value}" for i, (tag, r) in enumerate(zip(tags, factor_reports))
    ]
    notes.append(f"product {product.label}: gauge identity checked on {product_am.checked} positive pairs")
    if product_am.holds != all(r.holds for r in factor_reports):
        notes.append("product verdict disagrees with the factor verdicts")
        witnesses = [product_am.witness] if product_am.witness else []
        return _report(ProbeVerdict.inconclusive, witnesses, notes, seed)
    if product_am.holds:
        return _report(ProbeVerdict.holds, [], notes, seed)
    witness = product_am.witness
    notes.append(f"defect {format_rational(witness['ratio'])} realized in factor {witness['factor']}")
    return _report(ProbeVerdict.fails, [witness], notes, seed)


def _levi_preservation(families: list[SequenceFamily], K: int, seed: int) -> ProbeReport:
    factor_reports = [levi_probe(fam, K) for fam in families]
    product_report = levi_probe(_product_family(families), K)
    notes = [
        f"factor {i} ({fam.name}): {r.verdict.value}"
        for i, (fam, r) in enumerate(zip(families, factor_reports))
    ]
    notes.append(f"product: {product_report.verdict.value}")
    factor_holds = all(r.holds for r in factor_reports)
    matches = product_report.holds == factor_holds
    witnesses = list(product_report.witnesses)
    if matches and product_report.holds:
        if _supremum_of(product_report) == [_supremum_of(r) for r in factor_reports]:
            notes.append("product supremum equals the tuple of factor suprema")
        else:
            matches = False
            notes.append("product supremum differs from the tuple of factor suprema")
    if not matches:
        notes.append("product verdict disagrees with the factor verdicts")
        return _report(ProbeVerdict.inconclusive, witnesses, notes, seed)
    if product_report.holds:
        return _report(ProbeVerdict.holds, witnesses, notes, seed)
    witnesses = witnesses or [r.witnesses[0] for r in factor_reports if r.witnesses and not r.holds]
    return _report(ProbeVerdict.fails if witnesses else ProbeVerdict.inconclusive, witnesses, notes, seed)
