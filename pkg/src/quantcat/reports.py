"""Machine-readable verification reports.

One assertion per JSON line plus a trailing summary object; identical
configurations produce byte-identical files (records are sorted by item
id, numpy scalars are converted, and key order is fixed).
"""

from __future__ import annotations

import json

import numpy as np


def clean(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, np.ndarray):
        return [clean(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean(v) for v in value]
    return value


def record(item: str, suite: str, anchor: str, instance: str, verdict: str,
           law=None, axiom=None, witness=None, reason=None) -> dict:
    rec = {
        "item": item,
        "suite": suite,
        "anchor": anchor,
        "instance": instance,
        "law": law,
        "axiom": axiom,
        "verdict": verdict,
    }
    if witness is not None:
        rec["witness"] = clean(witness)
    if reason is not None:
        rec["reason"] = str(reason)
    return rec


def summarize(records: list[dict]) -> dict:
    counts = {}
    for r in records:
        counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
    return {
        "total": len(records),
        "verdicts": dict(sorted(counts.items())),
        "failures": sum(1 for r in records if r["verdict"] == "fail"),
        "skipped": sum(1 for r in records if r["verdict"] == "skip"),
    }


def to_jsonl(records: list[dict], config: dict | None = None) -> str:
    lines = []
    for r in sorted(records, key=lambda r: r["item"]):
        lines.append(json.dumps(clean(r), sort_keys=True,
                                separators=(",", ":")))
    summary = {"summary": summarize(records)}
    if config is not None:
        summary["config"] = clean(config)
    lines.append(json.dumps(summary, sort_keys=True, separators=(",", ":")))
    return "\n".join(lines) + "\n"


def render_human(records: list[dict]) -> str:
    out = []
    width = max([len(r["item"]) for r in records], default=4)
    for r in sorted(records, key=lambda r: r["item"]):
        line = f"{r['item']:<{width}}  {r['verdict']:<7} {r['anchor']}"
        if r.get("reason"):
            line += f"  [{r['reason']}]"
        if r.get("witness"):
            line += f"  witness={json.dumps(clean(r['witness']), sort_keys=True)}"
        out.append(line)
    s = summarize(records)
    out.append(f"-- {s['total']} assertions: "
               + ", ".join(f"{k}={v}" for k, v in s["verdicts"].items()))
    return "\n".join(out) + "\n"
