from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Callable, Sequence

from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict
from riesz_lab.lattice.closure import finite_sup, inf_closure, sup_closure
from riesz_lab.lattice.element import FiniteSet, LatticeElement, abs_pos_neg, join, meet, negate
from riesz_lab.operators.matrix import MatrixOp, apply, modulus_matrix, modulus_rk
from riesz_lab.pwl.function import (
    pwl_abs,
    pwl_eval,
    pwl_join,
    pwl_leq,
    pwl_meet,
    pwl_negate,
    pwl_sup_norm,
)
from riesz_lab.spaces.norms import solidity_check
from riesz_lab.spaces.tags import SpaceTag
from riesz_lab.utils.configuration import resolve_seed
from riesz_lab.utils.logging_mixin import LoggingMixin
from riesz_lab.utils.sampling import RationalSampler, derive_seed
from riesz_lab.utils.types import NOTSET, ArgNotSet

Law = Callable[[LatticeElement, LatticeElement, LatticeElement], bool]


def _plus(x: LatticeElement) -> LatticeElement:
    return abs_pos_neg(x)[1]


def _minus(x: LatticeElement) -> LatticeElement:
    return abs_pos_neg(x)[2]


def _abs(x: LatticeElement) -> LatticeElement:
    return abs_pos_neg(x)[0]


LATTICE_LAWS: dict[str, Law] = {
    "idempotency": lambda x, y, z: join(x, x) == x and meet(x, x) == x,
    "commutativity": lambda x, y, z: join(x, y) == join(y, x) and meet(x, y) == meet(y, x),
    "associativity": lambda x, y, z: (
        join(join(x, y), z) == join(x, join(y, z)) and meet(meet(x, y), z) == meet(x, meet(y, z))
    ),
    "absorption": lambda x, y, z: join(x, meet(x, y)) == x and meet(x, join(x, y)) == x,
    "distributivity": lambda x, y, z: (
        meet(x, join(y, z)) == join(meet(x, y), meet(x, z))
        and join(x, meet(y, z)) == meet(join(x, y), join(x, z))
    ),
    "duality": lambda x, y, z: meet(x, y) == negate(join(negate(x), negate(y))),
    "translation": lambda x, y, z: join(x + z, y + z) == join(x, y) + z,
    "riesz_decomposition": lambda x, y, z: (
        x == _plus(x) - _minus(x)
        and _abs(x) == _plus(x) + _minus(x)
        and meet(_plus(x), _minus(x)).is_zero()
    ),
    "riesz_sum": lambda x, y, z: x + y == join(x, y) + meet(x, y) and _abs(x - y) == join(x, y) - meet(x, y),
}


def lattice_axioms(trials: int = 1000, seed: int = 0, max_dim: int = 6) -> ProbeReport:
    """Exact checks of the vector-lattice laws on random triples, ``trials`` per law, dims 1..max_dim."""
    if max_dim < 1:
        raise ValueError("max_dim must be at least 1")
    sampler = RationalSampler(seed)
    for trial in range(trials):
        dim = 1 + trial % max_dim
        x, y, z = (sampler.element(dim) for _ in range(3))
        for name, law in LATTICE_LAWS.items():
            if not law(x, y, z):
                return ProbeReport(
                    "lattice_axioms",
                    ProbeVerdict.fails,
                    [{"law": name, "x": x, "y": y, "z": z}],
                    seed=seed,
                )
    return ProbeReport(
        "lattice_axioms",
        ProbeVerdict.holds,
        notes=[f"{len(LATTICE_LAWS)} laws, {trials} exact checks each, dims 1..{max_dim}"],
        seed=seed,
    )


CLOSURE_LAWS = ("supremum", "inf_duality", "contains", "sup_closed", "monotone", "idempotent")


def closure_law_failures(A: FiniteSet, extra: LatticeElement) -> list[str]:
    """The closure laws that fail for A, with ``extra`` joining A for the monotonicity check."""
    closure = sup_closure(A)
    checks = {
        "supremum": finite_sup(A) == finite_sup(closure),
        "inf_duality": inf_closure(A) == sup_closure(A.negate()).negate(),
        "contains": A.issubset(closure),
        "sup_closed": all(join(a, b) in closure for a, b in itertools.combinations(closure, 2)),
        "monotone": closure.issubset(sup_closure(FiniteSet([*A, extra]))),
        "idempotent": sup_closure(closure) == closure,
    }
    return [name for name in CLOSURE_LAWS if not checks[name]]


def observation(trials: int = 500, seed: int = 0, max_size: int = 5, max_dim: int = 4) -> ProbeReport:
    """The closure laws of ``closure_law_failures`` on random finite sets.

    sup A == sup A^v and A^ == -(-A)^v; A^v contains A, is sup-closed, grows with A and is its own closure.
    """
    sampler = RationalSampler(seed)
    for trial in range(trials):
        dim = sampler.integer(1, max_dim)
        A = FiniteSet(sampler.element(dim) for _ in range(sampler.integer(1, max_size)))
        failed = closure_law_failures(A, sampler.element(dim))
        if failed:
            return ProbeReport(
                "observation", ProbeVerdict.fails, [{"check": failed[0], "trial": trial, "set": A}], seed=seed
            )
    return ProbeReport(
        "observation",
        ProbeVerdict.holds,
        notes=[
            f"{trials} random finite sets of up to {max_size} elements in dims 1..{max_dim}",
            f"laws: {', '.join(CLOSURE_LAWS)}",
        ],
        seed=seed,
    )


DEFAULT_RK_POINTS: tuple[tuple[int, ...], ...] = ((1, 1, 1), (1, 2, 0), (2, 1, 1))


def rk_oracle(
    entries: Sequence[int] = (-1, 0, 1),
    shape: int = 3,
    points: Sequence[Sequence[int]] = DEFAULT_RK_POINTS,
) -> ProbeReport:
    """Closed-form modulus against the sign-pattern oracle, over every shape x shape matrix of ``entries``."""
    xs = [LatticeElement(p) for p in points]
    if any(x.dim != shape for x in xs):
        raise ValueError(f"Every point must have {shape} coordinates")
    cases = 0
    for flat in itertools.product(entries, repeat=shape * shape):
        T = MatrixOp([flat[i * shape : (i + 1) * shape] for i in range(shape)])
        closed_form = modulus_matrix(T)
        for x in xs:
            oracle = modulus_rk(T, x)
            expected = apply(closed_form, x)
            cases += 1
            if oracle != expected:
                return ProbeReport(
                    "rk_oracle",
                    ProbeVerdict.fails,
                    [{"matrix": T, "x": x, "oracle": oracle, "closed_form": expected}],
                )
    return ProbeReport("rk_oracle", ProbeVerdict.holds, notes=[f"{cases} cases agree exactly"])


def pwl_laws(trials: int = 200, seed: int = 0, points: int = 64) -> ProbeReport:
    """Exact envelopes against pointwise max and min at random points, plus duality and the AM identity."""
    sampler = RationalSampler(seed)
    for trial in range(trials):
        f, g = sampler.pwl(), sampler.pwl()
        upper, lower = pwl_join(f, g), pwl_meet(f, g)
        ts = [Fraction(sampler.integer(0, 1024), 1024) for _ in range(points)]
        checks = {
            "join": all(pwl_eval(upper, t) == max(pwl_eval(f, t), pwl_eval(g, t)) for t in ts),
            "meet": all(pwl_eval(lower, t) == min(pwl_eval(f, t), pwl_eval(g, t)) for t in ts),
            "duality": lower == pwl_negate(pwl_join(pwl_negate(f), pwl_negate(g))),
            "order": pwl_leq(lower, upper) and pwl_leq(f, upper) and pwl_leq(lower, g),
        }
        fp, gp = pwl_abs(f), pwl_abs(g)
        checks["am_identity"] = pwl_sup_norm(pwl_join(fp, gp)) == max(pwl_sup_norm(fp), pwl_sup_norm(gp))
        failed = [name for name, ok in checks.items() if not ok]
        if failed:
            return ProbeReport(
                "pwl_laws",
                ProbeVerdict.fails,
                [{"check": failed[0], "trial": trial, "f": f, "g": g}],
                seed=seed,
            )
    return ProbeReport(
        "pwl_laws",
        ProbeVerdict.holds,
        notes=[f"{trials} random pairs, {points} rational probe points each"],
        seed=seed,
    )


DEFAULT_SOLIDITY_TAGS: tuple[SpaceTag, ...] = (
    SpaceTag.seq_l1(4),
    SpaceTag.seq_linf(4),
    SpaceTag.weighted_l1([1, 2, Fraction(1, 2)]),
    SpaceTag.pwl_sup(),
    SpaceTag.pwl_l1(),
)


def solidity(
    tags: Sequence[SpaceTag] = DEFAULT_SOLIDITY_TAGS, trials: int = 1000, seed: int = 0
) -> ProbeReport:
    """solidity_check on every shipped norm."""
    notes = []
    for i, tag in enumerate(tags):
        verdict = solidity_check(tag, trials, derive_seed(seed, "solidity", i))
        if not verdict.holds:
            x, y = verdict.witness
            return ProbeReport("solidity", ProbeVerdict.fails, [{"tag": tag, "x": x, "y": y}], seed=seed)
        notes.append(f"{tag.label}: {trials} dominated pairs")
    return ProbeReport("solidity", ProbeVerdict.holds, notes=notes, seed=seed)


SUITES: dict[str, Callable[..., ProbeReport]] = {
    "lattice_axioms": lattice_axioms,
    "observation": observation,
    "rk_oracle": rk_oracle,
    "pwl_laws": pwl_laws,
    "solidity": solidity,
}
SEEDED_SUITES = {"lattice_axioms", "observation", "pwl_laws", "solidity"}


class InvariantSuite(LoggingMixin):
    """Runs the invariant suites behind ``riesz-lab verify``.

    Args:
        seed: base seed; each suite runs with a seed derived from it and the suite name
        max_dim: largest dimension used by the lattice-axiom suite
        logger_name: logger name, defaults to the class name
    """

    def __init__(self, *, seed: int | ArgNotSet = NOTSET, max_dim: int = 6, logger_name: str | None = None):
        super().__init__(logger_name=logger_name)
        if seed is NOTSET:
            seed = resolve_seed()
        self.seed = seed
        self.max_dim = max_dim

    def run(self, names: Sequence[str] | None = None, should_print: bool = False) -> list[ProbeReport]:
        names = list(SUITES) if names is None else list(names)
        unknown = [name for name in names if name not in SUITES]
        if unknown:
            raise ValueError(f"Unknown invariant suite {unknown[0]!r}; expected one of {', '.join(SUITES)}")
        reports = []
        for name in names:
            self.log(msg=f"Running {name}", level=logging.INFO, should_print=should_print)
            kwargs = {}
            if name in SEEDED_SUITES:
                kwargs["seed"] = derive_seed(self.seed, name)
            if name == "lattice_axioms":
                kwargs["max_dim"] = self.max_dim
            report = SUITES[name](**kwargs)
            if name not in SEEDED_SUITES:
                report = report.stamped(seed=self.seed)
            self.log(msg=f"{name}: {report.verdict.value}", level=logging.INFO, should_print=should_print)
            reports.append(report)
        return reports
