from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Mapping

from riesz_lab import __version__
from riesz_lab.diagnostics.registry import PROBES, get_probe
from riesz_lab.diagnostics.report import ProbeReport
from riesz_lab.spaces.tags import SpaceTag, parse_space
from riesz_lab.utils.configuration import Configuration, resolve_seed
from riesz_lab.utils.exceptions import ConfigValidationError, ProbeRuntimeError
from riesz_lab.utils.logging_mixin import LoggingMixin
from riesz_lab.utils.sampling import derive_seed
from riesz_lab.utils.serialization import canonical_dumps, config_digest, write_atomically
from riesz_lab.utils.types import NOTSET, ArgNotSet

SCOPE_NOTE = (
    "Verdicts are statements about the certificate curves at the probed parameters. Convergence of "
    "operator families is checked in induced norms only; the equicontinuous convergence topology and the "
    "Frechet-space route are not mechanized."
)


class OutputFormat(str, Enum):
    """Which report files a run writes."""

    json = "json"
    md = "md"
    both = "both"

    @classmethod
    def parse(cls, value: str) -> OutputFormat:
        return cls.md if value == "markdown" else cls(value)


@dataclass(frozen=True)
class ProbeRequest:
    """One entry of ``probes``: the raw parameters (defaults filled in) and their parsed form."""

    name: str
    params: dict[str, Any]
    parsed: dict[str, Any] = field(compare=False, repr=False)


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment.

    Attributes:
        probes: probes to run, in config order
        spaces: named spaces that probe parameters may refer to
        seed: base seed from the config file, overridden by RIESZ_LAB_SEED and --seed
        output: output path prefix
        format: json, md or both
    """

    probes: tuple[ProbeRequest, ...] = ()
    spaces: dict[str, SpaceTag] = field(default_factory=dict)
    seed: int | None = None
    output: str | None = None
    format: OutputFormat | None = None

    @classmethod
    def from_json(cls, payload: Any) -> ExperimentConfig:
        """Validate a decoded config; every probe is checked against its schema before anything runs.

        Raises:
            ConfigValidationError: anchored at the offending path, e.g. ``probes[0].params.K``
        """
        if not isinstance(payload, Mapping):
            raise ConfigValidationError("$", "the config must be a JSON object")
        unknown = set(payload) - {"probes", "spaces", "seed", "output", "format"}
        if unknown:
            raise ConfigValidationError(sorted(unknown)[0], "unknown config key")

        seed = payload.get("seed")
        valid_seed = isinstance(seed, int) and not isinstance(seed, bool) and 0 <= seed < 2**64
        if seed is not None and not valid_seed:
            raise ConfigValidationError("seed", f"expected an unsigned 64-bit integer, got {seed!r}")
        output = payload.get("output")
        if output is not None and not isinstance(output, str):
            raise ConfigValidationError("output", "expected a path prefix")
        output_format = payload.get("format")
        if output_format is not None:
            try:
                output_format = OutputFormat.parse(output_format)
            except ValueError:
                raise ConfigValidationError("format", "expected json, md, markdown or both") from None

        raw_spaces = payload.get("spaces", {})
        spaces: dict[str, SpaceTag] = {}
        if isinstance(raw_spaces, list):
            raw_spaces = {f"space{i}": spec for i, spec in enumerate(raw_spaces)}
        if not isinstance(raw_spaces, Mapping):
            raise ConfigValidationError("spaces", "expected an object of named space specs")
        for name, spec in raw_spaces.items():
            try:
                spaces[name] = parse_space(spec, spaces)
            except (ValueError, TypeError) as exc:
                raise ConfigValidationError(f"spaces.{name}", str(exc)) from None

        raw_probes = payload.get("probes", [])
        if not isinstance(raw_probes, list):
            raise ConfigValidationError("probes", "expected a list")
        probes = []
        for i, entry in enumerate(raw_probes):
            path = f"probes[{i}]"
            if isinstance(entry, str):
                entry = {"name": entry}
            if not isinstance(entry, Mapping) or "name" not in entry:
                raise ConfigValidationError(path, "expected an object with a 'name' key")
            name = entry["name"]
            if name not in PROBES:
                raise ConfigValidationError(
                    f"{path}.name", f"unknown probe {name!r}; expected one of {', '.join(sorted(PROBES))}"
                )
            spec = get_probe(name)
            raw_params = entry.get("params", {})
            parsed = spec.validate(raw_params, f"{path}.params", spaces)
            probes.append(ProbeRequest(name, spec.raw_params(raw_params), parsed))
        return cls(tuple(probes), spaces, seed, output, output_format)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        text = Path(path).read_text(encoding="utf-8")
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigValidationError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
        return cls.from_json(payload)

    def canonical(self, seed: int) -> dict[str, Any]:
        """The hashed region: probes with their raw parameters, named spaces and the effective seed."""
        return {
            "probes": [{"name": p.name, "params": p.params} for p in self.probes],
            "spaces": {name: tag.to_json() for name, tag in sorted(self.spaces.items())},
            "seed": seed,
        }


@dataclass(frozen=True)
class RunManifest:
    """Result of a run: the canonical config, its digest, the tool version and the sorted reports.

    ``run_timestamp`` lives outside the hashed config and is only set for stamped runs.
    """

    config: dict[str, Any]
    config_hash: str
    tool_version: str
    reports: tuple[ProbeReport, ...]
    run_timestamp: str | None = None

    def verify_hash(self) -> bool:
        return config_digest(self.config) == self.config_hash

    @property
    def verdicts(self) -> dict[str, list[str]]:
        summary: dict[str, list[str]] = {}
        for report in self.reports:
            summary.setdefault(report.probe_name, []).append(report.verdict.value)
        return summary

    def to_json(self) -> dict[str, Any]:
        payload = {
            "config": self.config,
            "config_hash": self.config_hash,
            "tool_version": self.tool_version,
            "reports": [report.to_json() for report in self.reports],
        }
        if self.run_timestamp is not None:
            payload["run_timestamp"] = self.run_timestamp
        return payload

    def dumps(self) -> str:
        return canonical_dumps(self.to_json(), indent=2) + "\n"

    def to_markdown(self, approx: bool = False) -> str:
        lines = [
            "# riesz-lab report",
            "",
            f"- tool version: `{self.tool_version}`",
            f"- config hash: `{self.config_hash}`",
            f"- seed: `{self.config['seed']}`",
        ]
        if self.run_timestamp is not None:
            lines.append(f"- run timestamp: `{self.run_timestamp}`")
        lines.append("")
        if self.reports:
            lines += ["| probe | verdict |", "|---|---|"]
            lines += [f"| {r.probe_name} | {r.verdict.value} |" for r in self.reports]
            lines.append("")
        body = "\n".join(report.to_markdown(approx=approx) for report in self.reports)
        return "\n".join(lines) + "\n" + body + f"\n## Scope\n\n{SCOPE_NOTE}\n"


def write_manifest(
    manifest: RunManifest, prefix: str | Path, output_format: OutputFormat, approx: bool = False
) -> list[Path]:
    """Write ``<prefix>.manifest.json`` and/or ``<prefix>.report.md`` atomically."""
    written = []
    if output_format in (OutputFormat.json, OutputFormat.both):
        path = Path(f"{prefix}.manifest.json")
        write_atomically(path, manifest.dumps())
        written.append(path)
    if output_format in (OutputFormat.md, OutputFormat.both):
        path = Path(f"{prefix}.report.md")
        write_atomically(path, manifest.to_markdown(approx=approx))
        written.append(path)
    return written


class ProbeRunner(LoggingMixin):
    """Run the probes of an ExperimentConfig and assemble the manifest.

    Examples:
        >>> from riesz_lab.runner import ExperimentConfig, ProbeRunner
        >>> config = ExperimentConfig.from_json(
        ...     {"probes": [{"name": "am_identity_check", "params": {"tag": "SeqLInf(8)"}}]}
        ... )
        >>> manifest = ProbeRunner().run(config, write=False)

    Args:
        jobs: worker threads; probes run sequentially with 1. Defaults to RIESZ_LAB_JOBS.
        logger_name: logger name. Defaults to "ProbeRunner".
    """

    def __init__(self, *, jobs: int | ArgNotSet = NOTSET, logger_name: str | None = None):
        super().__init__(logger_name=logger_name or "ProbeRunner")
        if jobs is NOTSET:
            jobs = Configuration.RIESZ_LAB_JOBS
        if jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.jobs = jobs

    def _execute(self, index: int, request: ProbeRequest, seed: int, config_hash: str) -> ProbeReport:
        probe_seed = derive_seed(seed, index, request.name)
        try:
            report = get_probe(request.name).execute(request.parsed, probe_seed)
        except Exception as exc:
            raise ProbeRuntimeError(request.name, exc) from exc
        return report.stamped(config_hash=config_hash)

    def run(
        self,
        config: ExperimentConfig,
        *,
        seed: int | ArgNotSet = NOTSET,
        output: str | ArgNotSet = NOTSET,
        output_format: OutputFormat | ArgNotSet = NOTSET,
        stamp: bool | ArgNotSet = NOTSET,
        approx: bool = False,
        write: bool = True,
        should_print: bool = False,
    ) -> RunManifest:
        """Run every probe of ``config`` and, unless ``write`` is False, write the report files.

        Args:
            config: a validated experiment
            seed: command line seed; falls back to RIESZ_LAB_SEED, then to the config seed
            output: output path prefix; falls back to the config, then to RIESZ_LAB_OUTPUT
            output_format: json, md or both; falls back to the config, then to RIESZ_LAB_FORMAT
            stamp: add a run timestamp outside the hashed region, defaults to RIESZ_LAB_STAMP_MANIFEST
            approx: append non-authoritative decimal renderings to the Markdown tables
            write: write the files; the manifest is returned either way
            should_print: print progress instead of logging it

        Raises:
            ProbeRuntimeError: a probe raised; names the first failing probe in config order
        """
        effective_seed = resolve_seed(None if seed is NOTSET else seed, config.seed)
        if output is NOTSET:
            output = config.output or Configuration.RIESZ_LAB_OUTPUT
        if output_format is NOTSET:
            output_format = config.format or OutputFormat.parse(Configuration.RIESZ_LAB_FORMAT)
        if stamp is NOTSET:
            stamp = Configuration.RIESZ_LAB_STAMP_MANIFEST

        canonical = config.canonical(effective_seed)
        config_hash = config_digest(canonical)
        self.log(
            msg=f"Running {len(config.probes)} probes with seed {effective_seed} (config {config_hash[:12]})",
            level=logging.INFO,
            should_print=should_print,
        )
        requests = list(enumerate(config.probes))
        if self.jobs > 1 and len(requests) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                futures = [
                    pool.submit(self._execute, i, request, effective_seed, config_hash)
                    for i, request in requests
                ]
                reports = [future.result() for future in futures]
        else:
            reports = [self._execute(i, request, effective_seed, config_hash) for i, request in requests]
        for report in reports:
            self.log(
                msg=f"{report.probe_name}: {report.verdict.value}",
                level=logging.INFO,
                should_print=should_print,
            )

        indexed = sorted(enumerate(reports), key=lambda item: (item[1].probe_name, item[0]))
        ordered = [report for _, report in indexed]
        manifest = RunManifest(
            config=canonical,
            config_hash=config_hash,
            tool_version=__version__,
            reports=tuple(ordered),
            run_timestamp=datetime.now(timezone.utc).isoformat() if stamp else None,
        )
        if write:
            for path in write_manifest(manifest, output, output_format, approx=approx):
                self.log(msg=f"Wrote {path}", level=logging.INFO, should_print=should_print)
        return manifest
