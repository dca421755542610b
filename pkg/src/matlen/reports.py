"""Instance files, report records, and canonical serialization.

The canonical report body is JSON with sorted keys and no timestamps, so a
rerun with the same configuration is byte-identical. Instance files follow
the fixed schema {"schema": 1, "p": ..., "n": ..., "matrices": [...]} with
entries already reduced into [0, p): out-of-range entries are rejected, not
silently reduced.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .certificates import (
    BoundLedger,
    GeneratorAnalysis,
    RankCertificate,
    analyze_generators,
    best_certificates,
    bound_ledger,
)
from .errors import ParseError
from .length import GeneratingSet, LengthReport, compute_length
from .linalg import Matrix, PrimeField

INSTANCE_SCHEMA = 1
REPORT_SCHEMA_VERSION = 1


def parse_instance(obj: Any) -> GeneratingSet:
    """Validate a decoded instance object and build the generating set."""
    if not isinstance(obj, dict):
        raise ParseError(f"instance must be a JSON object, got {type(obj).__name__}")
    if obj.get("schema") != INSTANCE_SCHEMA:
        raise ParseError(f"unsupported instance schema {obj.get('schema')!r}")
    for key in ("p", "n", "matrices"):
        if key not in obj:
            raise ParseError(f"instance is missing the {key!r} key")
    p, n, matrices = obj["p"], obj["n"], obj["matrices"]
    if not isinstance(p, int):
        raise ParseError(f"p must be an integer, got {p!r}")
    if not isinstance(n, int) or n < 1:
        raise ParseError(f"n must be a positive integer, got {n!r}")
    field = PrimeField(p)
    if not isinstance(matrices, list) or not matrices:
        raise ParseError("matrices must be a nonempty list")
    gens = []
    for mi, rows in enumerate(matrices):
        if not isinstance(rows, list) or len(rows) != n:
            raise ParseError(f"matrix {mi} must have {n} rows")
        for ri, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != n:
                raise ParseError(
                    f"matrix {mi} row {ri} has {len(row) if isinstance(row, list) else 'no'} entries, expected {n}"
                )
            for ci, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ParseError(f"matrix {mi} entry ({ri},{ci}) is not an integer")
                if not 0 <= x < p:
                    raise ParseError(
                        f"matrix {mi} entry ({ri},{ci}) = {x} outside [0, {p})"
                    )
        gens.append(Matrix(field, rows))
    return GeneratingSet(field=field, n=n, gens=tuple(gens))


def load_instance(path: str) -> GeneratingSet:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON in {path}: {exc}") from exc
    return parse_instance(obj)


def instance_to_json(gs: GeneratingSet) -> dict:
    return {
        "schema": INSTANCE_SCHEMA,
        "p": gs.field.p,
        "n": gs.n,
        "matrices": [g.entries.tolist() for g in gs.gens],
    }


def length_report_to_json(rep: LengthReport) -> dict:
    return {
        "n": rep.n,
        "dims": list(rep.dims),
        "length": rep.length,
        "generated_dim": rep.generated_dim,
        "is_generating": rep.is_generating,
    }


def ledger_to_json(ledger: BoundLedger) -> list[dict]:
    return [
        {
            "name": e.name,
            "bound_value": e.bound_value,
            "applicable": e.applicable,
            "hypothesis_note": e.hypothesis_note,
        }
        for e in ledger.entries
    ]


def certificate_to_json(cert: RankCertificate) -> dict:
    return {
        "exponents": {str(lam): a for lam, a in cert.exponents},
        "degree": cert.degree,
        "achieved_rank": cert.achieved_rank,
        "witness": cert.witness.entries.tolist(),
    }


def analysis_to_json(a: GeneratorAnalysis) -> dict:
    out: dict[str, Any] = {"index": a.index, "minpoly_degree": a.degree}
    if a.spectrum is not None:
        out["spectrum"] = [[lam, e] for lam, e in a.spectrum.roots]
    if a.profile is not None:
        out["jordan_profile"] = {str(lam): list(sizes) for lam, sizes in sorted(a.profile.blocks.items())}
    if a.split_error is not None:
        out["not_split"] = a.split_error
    return out


def collect_violations(ledger: BoundLedger, rep: LengthReport) -> list[dict]:
    """Applicable ledger entries the computed length exceeds."""
    if not rep.is_generating or rep.length is None:
        return []
    return [
        {"bound": e.name, "bound_value": e.bound_value, "length": rep.length}
        for e in ledger.entries
        if e.applicable and rep.length > e.bound_value
    ]


def evaluate_instance(gs: GeneratingSet, with_certificates: bool = True) -> dict:
    """Full verification record: length, ledger, certificates, violations."""
    analyses = analyze_generators(gs)
    rep = compute_length(gs)
    ledger = bound_ledger(gs, analyses)
    violations = collect_violations(ledger, rep)
    record: dict[str, Any] = {
        "n": gs.n,
        "p": gs.field.p,
        "m_S": max(a.degree for a in analyses),
        "generators": [analysis_to_json(a) for a in analyses],
        "length_report": length_report_to_json(rep),
        "ledger": ledger_to_json(ledger),
        "violations": violations,
        "flags": [],
    }
    if rep.is_generating and rep.length is not None and rep.length > 2 * gs.n - 2:
        record["flags"].append("length_exceeds_2n_minus_2")
    if with_certificates:
        record["certificates"] = {
            str(i): {str(r): certificate_to_json(c) for r, c in certs.items()}
            for i, certs in best_certificates(gs, analyses).items()
        }
    return record


def canonical_json(body: dict) -> str:
    """Deterministic serialization: sorted keys, fixed separators, newline-terminated."""
    return json.dumps(body, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def make_report(command: str, config: dict, instances: list[dict]) -> dict:
    """Assemble the uniform report body with its summary block."""
    evaluated = [r for r in instances if "skipped" not in r]
    violation_count = sum(len(r.get("violations", ())) for r in evaluated)
    max_length_by_n: dict[str, int] = {}
    for r in evaluated:
        rep = r.get("length_report")
        if rep and rep.get("length") is not None:
            key = str(r["n"])
            max_length_by_n[key] = max(max_length_by_n.get(key, 0), rep["length"])
    summary = {
        "instances": len(instances),
        "evaluated": len(evaluated),
        "skipped": len(instances) - len(evaluated),
        "violation_count": violation_count,
        "max_length_by_n": max_length_by_n,
        "paz_conjecture_flags": [
            r.get("index", i)
            for i, r in enumerate(evaluated)
            if "length_exceeds_2n_minus_2" in r.get("flags", ())
        ],
        "generation_retries": sum(r.get("retries", 0) for r in instances),
    }
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": command,
        "config": config,
        "instances": instances,
        "summary": summary,
    }


def report_to_csv(report: dict) -> str:
    """Flat per-instance summary with the spec's column set."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        [
            "instance_id",
            "family",
            "n",
            "p",
            "seed",
            "m_S",
            "length",
            "tightest_applicable_bound",
            "violation",
        ]
    )
    for i, r in enumerate(report["instances"]):
        ledger = r.get("ledger", [])
        applicable = [e["bound_value"] for e in ledger if e["applicable"]]
        rep = r.get("length_report") or {}
        writer.writerow(
            [
                r.get("index", i),
                r.get("family", ""),
                r.get("n", ""),
                r.get("p", ""),
                r.get("seed", ""),
                r.get("m_S", ""),
                rep.get("length", ""),
                min(applicable) if applicable else "",
                ";".join(v["bound"] for v in r.get("violations", ())),
            ]
        )
    return buf.getvalue()
