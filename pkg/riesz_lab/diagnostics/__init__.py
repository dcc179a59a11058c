from __future__ import annotations

from riesz_lab.diagnostics.report import ProbeReport, ProbeVerdict

__all__ = ["ProbeReport", "ProbeVerdict"]
