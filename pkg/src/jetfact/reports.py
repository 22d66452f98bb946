"""Machine-readable check reports shared by the axiom harnesses and CLI."""

from __future__ import annotations

import time

__all__ = ["check_entry", "merge_checks", "make_report", "all_pass"]


def check_entry(name: str, ok: bool, detail=None) -> dict:
    entry = {"name": name, "status": "pass" if ok else "fail"}
    if detail is not None:
        entry["detail"] = detail
    return entry


def merge_checks(*groups) -> list:
    out = []
    for g in groups:
        out.extend(g)
    return out


def make_report(command: str, params: dict, checks: list, started: float) -> dict:
    return {
        "command": command,
        "params": params,
        "checks": checks,
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }


def all_pass(checks) -> bool:
    if isinstance(checks, dict):
        checks = checks.get("checks", [])
    return all(c["status"] == "pass" for c in checks)
