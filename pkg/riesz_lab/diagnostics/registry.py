from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from riesz_lab.diagnostics.am import (
    NORM_FAMILY_KINDS,
    SamplingSpec,
    am_defect_curve,
    am_identity_check,
    order_bound_curve,
)
from riesz_lab.diagnostics.families import build_family, build_operator_family
from riesz_lab.diagnostics.invariants import lattice_axioms, observation, pwl_laws, rk_oracle, solidity
from riesz_lab.diagnostics.lebesgue import lebesgue_preconditions, lebesgue_probe
from riesz_lab.diagnostics.levi import levi_preconditions, levi_probe
from riesz_lab.diagnostics.products import PROBE_KINDS, product_preservation_check
from riesz_lab.diagnostics.projections import nb_identity_product, projection_gap
from riesz_lab.diagnostics.report import ProbeReport
from riesz_lab.diagnostics.transfer import (
    domination_ideal_echo,
    operator_lebesgue_demo,
    operator_lebesgue_preconditions,
    operator_lebesgue_rank_one_demo,
    operator_lebesgue_rank_one_preconditions,
    operator_levi_demo,
    operator_levi_preconditions,
)
from riesz_lab.lattice.element import LatticeElement
from riesz_lab.lattice.rational import to_rational
from riesz_lab.spaces.tags import SpaceKind, SpaceTag, parse_space
from riesz_lab.utils.configuration import Configuration
from riesz_lab.utils.exceptions import ConfigValidationError
from riesz_lab.utils.types import NOTSET

logger = logging.getLogger("riesz_lab.diagnostics.registry")

Spaces = Mapping[str, SpaceTag]
Parser = Callable[[Any, Spaces], Any]


def integer(minimum: int | None = None, maximum: int | None = None) -> Parser:
    def parse(value: Any, spaces: Spaces) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"expected an integer, got {value!r}")
        if minimum is not None and value < minimum:
            raise ValueError(f"must be at least {minimum}, got {value}")
        if maximum is not None and value > maximum:
            raise ValueError(f"must be at most {maximum}, got {value}")
        return value

    return parse


def rational(minimum: Fraction | None = None) -> Parser:
    def parse(value: Any, spaces: Spaces) -> Fraction:
        result = to_rational(value)
        if minimum is not None and result < minimum:
            raise ValueError(f"must be at least {minimum}, got {result}")
        return result

    return parse


def integer_list(minimum: int | None = 1) -> Parser:
    def parse(value: Any, spaces: Spaces) -> list[int]:
        if not isinstance(value, (list, tuple)) or not value:
            raise ValueError(f"expected a nonempty list of integers, got {value!r}")
        return [integer(minimum)(v, spaces) for v in value]

    return parse


def optional(parser: Parser) -> Parser:
    def parse(value: Any, spaces: Spaces) -> Any:
        return None if value is None else parser(value, spaces)

    return parse


def choice(allowed: Sequence[str]) -> Parser:
    def parse(value: Any, spaces: Spaces) -> str:
        if value not in allowed:
            raise ValueError(f"expected one of {', '.join(allowed)}, got {value!r}")
        return value

    return parse


def kind(allowed: Sequence[SpaceKind]) -> Parser:
    def parse(value: Any, spaces: Spaces) -> SpaceKind:
        return SpaceKind(choice([k.value for k in allowed])(value, spaces))

    return parse


def space(value: Any, spaces: Spaces) -> SpaceTag:
    return parse_space(value, spaces)


def norm_space(value: Any, spaces: Spaces) -> SpaceTag:
    tag = parse_space(value, spaces)
    if tag.is_product:
        raise ValueError(f"{tag.label} is a product; a norm space is needed")
    return tag


def space_list(value: Any, spaces: Spaces) -> list[SpaceTag]:
    if not isinstance(value, (list, tuple)) or not value:
        raise ValueError(f"expected a nonempty list of spaces, got {value!r}")
    return [norm_space(v, spaces) for v in value]


def element(value: Any, spaces: Spaces) -> LatticeElement:
    if not isinstance(value, (list, tuple)):
        raise ValueError(f"expected a list of rationals, got {value!r}")
    return LatticeElement(value)


def family(value: Any, spaces: Spaces):
    return build_family(value)


def family_list(value: Any, spaces: Spaces):
    if not isinstance(value, (list, tuple)) or not value:
        raise ValueError(f"expected a nonempty list of families, got {value!r}")
    return [build_family(v) for v in value]


def operator_family(value: Any, spaces: Spaces):
    return build_operator_family(value)


def points(value: Any, spaces: Spaces) -> list[tuple[int, ...]]:
    if not isinstance(value, (list, tuple)) or not value:
        raise ValueError(f"expected a nonempty list of points, got {value!r}")
    return [tuple(integer(0)(c, spaces) for c in point) for point in value]


@dataclass(frozen=True)
class Param:
    """One probe parameter: its parser and its raw JSON default (NOTSET when required)."""

    name: str
    parse: Parser
    default: Any = NOTSET


@dataclass(frozen=True)
class ProbeSpec:
    """A registered probe.

    Attributes:
        name: registry name used in configs and on the command line
        run: called with the parsed parameters (and ``seed`` for seeded probes)
        params: parameter schema
        seeded: whether the probe draws random samples
        check: (parameter name, precondition) pairs; a precondition raises on parameters the probe
            would reject, so configs fail before any probe runs
        summary: one line for ``riesz-lab probe --list``
    """

    name: str
    run: Callable[..., ProbeReport]
    params: tuple[Param, ...] = ()
    seeded: bool = False
    check: tuple[tuple[str, Callable[[dict[str, Any]], Any]], ...] = ()
    summary: str = ""
    param_names: frozenset[str] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "param_names", frozenset(p.name for p in self.params))

    def raw_params(self, raw: Mapping[str, Any]) -> dict[str, Any]:
        """User parameters with the raw defaults filled in, the form that is hashed and stored."""
        merged = {p.name: p.default for p in self.params if p.default is not NOTSET}
        merged.update(raw)
        return merged

    def validate(self, raw: Mapping[str, Any], path: str, spaces: Spaces | None = None) -> dict[str, Any]:
        """Parse ``raw`` against the schema and run the preconditions.

        Raises:
            ConfigValidationError: anchored at ``<path>.<parameter>``
        """
        spaces = spaces or {}
        if not isinstance(raw, Mapping):
            raise ConfigValidationError(path, f"parameters of probe {self.name!r} must be an object")
        for key in raw:
            if key not in self.param_names:
                raise ConfigValidationError(f"{path}.{key}", f"unknown parameter for probe {self.name!r}")
        parsed: dict[str, Any] = {}
        for param in self.params:
            value = raw.get(param.name, param.default)
            if value is NOTSET:
                raise ConfigValidationError(f"{path}.{param.name}", f"required by probe {self.name!r}")
            try:
                parsed[param.name] = param.parse(value, spaces)
            except (ValueError, TypeError) as exc:
                raise ConfigValidationError(f"{path}.{param.name}", f"probe {self.name!r}: {exc}") from None
        for param_name, precondition in self.check:
            try:
                precondition(parsed)
            except (ValueError, TypeError) as exc:
                raise ConfigValidationError(f"{path}.{param_name}", f"probe {self.name!r}: {exc}") from None
        return parsed

    def execute(self, params: Mapping[str, Any], seed: int) -> ProbeReport:
        kwargs = dict(params)
        if self.seeded:
            kwargs["seed"] = seed
        logger.debug("Running probe %s", self.name)
        return self.run(**kwargs).stamped(seed=seed)


def _am_defect(kind: SpaceKind, n_range: list[int], trials: int, set_size: int, seed: int) -> ProbeReport:
    return am_defect_curve(kind, n_range, SamplingSpec(trials=trials, set_size=set_size, seed=seed))


def _product_check(params: dict[str, Any]) -> None:
    if params["probe"] == "am":
        if not params.get("tags"):
            raise ValueError("the am variant needs 'tags'")
    else:
        if not params.get("families"):
            raise ValueError("the levi variant needs 'families'")
        for fam in params["families"]:
            levi_preconditions(fam, params["K"])


def _product_run(probe: str, K: int, trials: int, seed: int, tags=None, families=None) -> ProbeReport:
    return product_preservation_check(tags, probe, families=families, K=K, trials=trials, seed=seed)


def _nb_identity_check(params: dict[str, Any]) -> None:
    if any(i >= params["factors"] for i in params["constrained"]):
        raise ValueError(f"constrained factors must lie in 0..{params['factors'] - 1}")


def _rk_oracle_check(params: dict[str, Any]) -> None:
    if any(len(point) != params["shape"] for point in params["points"]):
        raise ValueError(f"every point needs {params['shape']} coordinates")


_TRIALS = Configuration.RIESZ_LAB_TRIALS
_THRESHOLD = "1/1048576"
_N_RANGE = [2, 4, 8, 16]

PROBES: dict[str, ProbeSpec] = {
    spec.name: spec
    for spec in (
        ProbeSpec(
            "am_identity_check",
            am_identity_check,
            (Param("tag", norm_space), Param("trials", integer(0), _TRIALS)),
            seeded=True,
            summary="norm(x v y) == max(norm x, norm y) on positive pairs",
        ),
        ProbeSpec(
            "am_defect_curve",
            _am_defect,
            (
                Param("kind", kind(NORM_FAMILY_KINDS)),
                Param("n_range", integer_list(1), _N_RANGE),
                Param("trials", integer(0), _TRIALS),
                Param("set_size", integer(1), 3),
            ),
            seeded=True,
            summary="largest norm over B^v for unit-ball sets B, as the dimension grows",
        ),
        ProbeSpec(
            "order_bound_curve",
            order_bound_curve,
            (
                Param("kind", kind((SpaceKind.SeqL1, SpaceKind.SeqLInf))),
                Param("n_range", integer_list(1), _N_RANGE),
            ),
            summary="norm of the least order bound of the unit-ball extreme set",
        ),
        ProbeSpec(
            "lebesgue_probe",
            lebesgue_probe,
            (
                Param("fam", family),
                Param("K", integer(2), 64),
                Param("threshold", rational(Fraction(0)), _THRESHOLD),
            ),
            check=(("fam", lambda p: lebesgue_preconditions(p["fam"], p["K"], p["threshold"])),),
            summary="norms of a family decreasing to 0",
        ),
        ProbeSpec(
            "levi_probe",
            levi_probe,
            (Param("fam", family), Param("K", integer(2), 64)),
            check=(("fam", lambda p: levi_preconditions(p["fam"], p["K"])),),
            summary="supremum, or slope certificate, of an increasing bounded family",
        ),
        ProbeSpec(
            "projection_gap",
            projection_gap,
            (
                Param("dim", integer(2), 16),
                Param("kind", kind((SpaceKind.SeqL1, SpaceKind.SeqLInf)), SpaceKind.SeqLInf.value),
            ),
            summary="induced_norm(I - P_n) against pointwise convergence",
        ),
        ProbeSpec(
            "product_preservation_check",
            _product_run,
            (
                Param("probe", choice(PROBE_KINDS), "am"),
                Param("tags", optional(space_list), None),
                Param("families", optional(family_list), None),
                Param("K", integer(2), 16),
                Param("trials", integer(0), _TRIALS),
            ),
            seeded=True,
            check=(("probe", _product_check),),
            summary="factorwise AM or Levi verdicts against the product's",
        ),
        ProbeSpec(
            "operator_levi_demo",
            operator_levi_demo,
            (Param("y_family", family), Param("x0", element), Param("K", integer(2), 20)),
            check=(("y_family", lambda p: operator_levi_preconditions(p["y_family"], p["x0"], p["K"])),),
            summary="rank-one operators f (x) y_k and their supremum",
        ),
        ProbeSpec(
            "operator_lebesgue_demo",
            operator_lebesgue_demo,
            (
                Param("T_family", operator_family),
                Param("tag", norm_space),
                Param("K", integer(2), 30),
                Param("threshold", rational(Fraction(0)), _THRESHOLD),
            ),
            check=(("T_family", lambda p: operator_lebesgue_preconditions(p["T_family"], p["tag"], p["K"])),),
            summary="induced norms of positive operators decreasing to 0",
        ),
        ProbeSpec(
            "operator_lebesgue_rank_one_demo",
            operator_lebesgue_rank_one_demo,
            (
                Param("u_family", family),
                Param("x0", element, [1]),
                Param("K", integer(2), 64),
                Param("threshold", rational(Fraction(0)), _THRESHOLD),
            ),
            check=(
                (
                    "u_family",
                    lambda p: operator_lebesgue_rank_one_preconditions(
                        p["u_family"], p["x0"], p["K"], p["threshold"]
                    ),
                ),
            ),
            summary="rank-one operators f (x) u_k over a family decreasing to 0",
        ),
        ProbeSpec(
            "nb_identity_product",
            nb_identity_product,
            (
                Param("factors", integer(1), 3),
                Param("constrained", integer_list(0), [0, 1]),
                Param("factor_dim", integer(1), 1),
                Param("kind", kind((SpaceKind.SeqL1, SpaceKind.SeqLInf)), SpaceKind.SeqLInf.value),
            ),
            check=(("constrained", _nb_identity_check),),
            summary="identity of a product against a neighborhood leaving a factor free",
        ),
        ProbeSpec(
            "domination_ideal_echo",
            domination_ideal_echo,
            (Param("trials", integer(0), 500), Param("max_shape", integer(1), 3)),
            seeded=True,
            summary="|T| <= |S| forces induced_norm(T) <= induced_norm(S)",
        ),
        ProbeSpec(
            "lattice_axioms",
            lattice_axioms,
            (Param("trials", integer(0), 1000), Param("max_dim", integer(1), 6)),
            seeded=True,
            summary="vector-lattice laws on random triples",
        ),
        ProbeSpec(
            "observation",
            observation,
            (
                Param("trials", integer(0), 500),
                Param("max_size", integer(1, 10), 5),
                Param("max_dim", integer(1), 4),
            ),
            seeded=True,
            summary="sup A == sup A^v, inf-closure duality, monotone and idempotent closures",
        ),
        ProbeSpec(
            "rk_oracle",
            rk_oracle,
            (
                Param("entries", integer_list(None), [-1, 0, 1]),
                Param("shape", integer(1, 3), 3),
                Param("points", points, [[1, 1, 1], [1, 2, 0], [2, 1, 1]]),
            ),
            check=(("points", _rk_oracle_check),),
            summary="closed-form modulus against the sign-pattern oracle",
        ),
        ProbeSpec(
            "pwl_laws",
            pwl_laws,
            (Param("trials", integer(0), 200), Param("points", integer(1), 64)),
            seeded=True,
            summary="PWL envelopes against pointwise evaluation",
        ),
        ProbeSpec(
            "solidity",
            solidity,
            (Param("trials", integer(0), 1000),),
            seeded=True,
            summary="norm monotonicity on dominated pairs for every shipped norm",
        ),
    )
}


def get_probe(name: str) -> ProbeSpec:
    if name not in PROBES:
        raise KeyError(f"Unknown probe {name!r}; expected one of {', '.join(sorted(PROBES))}")
    return PROBES[name]


def run_probe(name: str, raw_params: Mapping[str, Any] | None = None, seed: int = 0) -> ProbeReport:
    """Validate ``raw_params`` and run probe ``name`` with ``seed``."""
    spec = get_probe(name)
    params = spec.validate(raw_params or {}, f"{name}.params")
    return spec.execute(params, seed)


COUNTEREXAMPLES: dict[str, tuple[str, dict[str, Any]]] = {
    "c0-projections": ("projection_gap", {"dim": 16, "kind": "SeqLInf"}),
    "l1-projections": ("projection_gap", {"dim": 16, "kind": "SeqL1"}),
    "identity-product": ("nb_identity_product", {"factors": 3, "constrained": [0, 1]}),
    "tents": ("lebesgue_probe", {"fam": "tents", "K": 64, "threshold": _THRESHOLD}),
    "c0-rank-one": (
        "operator_lebesgue_rank_one_demo",
        {"u_family": "c0_tails", "x0": [1], "K": 32, "threshold": _THRESHOLD},
    ),
    "tents-rank-one": (
        "operator_lebesgue_rank_one_demo",
        {"u_family": "tents", "x0": [1], "K": 64, "threshold": _THRESHOLD},
    ),
    "ramps": ("levi_probe", {"fam": "ramps", "K": 64}),
    "l1-am": ("am_defect_curve", {"kind": "SeqL1", "n_range": _N_RANGE}),
}


def counterexample(name: str, overrides: Mapping[str, Any] | None = None) -> tuple[str, dict[str, Any]]:
    """The probe behind counterexample ``name`` and its canonical parameters, updated with ``overrides``."""
    if name not in COUNTEREXAMPLES:
        raise KeyError(f"Unknown counterexample {name!r}; expected one of {', '.join(COUNTEREXAMPLES)}")
    probe, params = COUNTEREXAMPLES[name]
    return probe, {**params, **(overrides or {})}
