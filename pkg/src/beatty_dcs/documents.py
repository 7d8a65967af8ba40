"""JSON documents exchanged by the command line tool.

A system document::

    {
      "p": 7,
      "sequences": [
        {"q": 4, "offset_num": 0, "offset_den": 1},
        {"q": 2, "offset_num": -1, "offset_den": 1},
        {"q": 1, "offset_num": -3, "offset_den": 1}
      ],
      "name": "optional",
      "source": "optional"
    }

Offsets are exact integer pairs.  Output documents are written with a fixed key
order, two-space indentation and a trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .core import BeattySpec, BeattySystem, CoverCertificate, ResidueBlock
from .correspondence import BlockPartition
from .search import SearchReport, SolutionCertificate
from .tg import ApStructure, C2Report, GapProfile, TgSequence


class DocumentError(ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def _format(value: Any, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_format(v, indent + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        items = [pad + _format(v, indent + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(value, ensure_ascii=False)


def dumps(doc: dict) -> str:
    """JSON with nested containers indented and lists of scalars kept on one line."""
    return _format(doc, 0) + "\n"


def _int(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise DocumentError(where + key, "missing")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(where + key, f"expected an integer, got {value!r}")
    return value


def parse_system(text: str) -> tuple[BeattySystem, dict]:
    """Parse a system document; returns the system and its metadata."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("<document>", f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise DocumentError("<document>", "expected an object")
    p = _int(doc, "p", "")
    seqs = doc.get("sequences")
    if not isinstance(seqs, list) or not seqs:
        raise DocumentError("sequences", "expected a non-empty list")
    specs = []
    for i, item in enumerate(seqs):
        where = f"sequences[{i}]."
        if not isinstance(item, dict):
            raise DocumentError(f"sequences[{i}]", "expected an object")
        q = _int(item, "q", where)
        num = _int(item, "offset_num", where)
        den = item.get("offset_den", 1)
        if isinstance(den, bool) or not isinstance(den, int) or den < 1:
            raise DocumentError(where + "offset_den", f"expected a positive integer, got {den!r}")
        try:
            specs.append(BeattySpec(p, q, Fraction(num, den)))
        except ValueError as exc:
            raise DocumentError(f"sequences[{i}]", str(exc)) from None
    meta = {k: doc[k] for k in ("name", "source") if k in doc}
    for k, v in meta.items():
        if not isinstance(v, str):
            raise DocumentError(k, "expected a string")
    return BeattySystem(specs), meta


def system_doc(system: BeattySystem, name: Optional[str] = None,
               source: Optional[str] = None) -> dict:
    doc: dict[str, Any] = {"p": system.p, "sequences": [
        {"q": s.q, "offset_num": s.beta.numerator, "offset_den": s.beta.denominator}
        for s in system.specs]}
    if name is not None:
        doc["name"] = name
    if source is not None:
        doc["source"] = source
    return doc


def canonical(text: str) -> str:
    system, meta = parse_system(text)
    return dumps(system_doc(system, meta.get("name"), meta.get("source")))


def certificate_doc(cert: CoverCertificate) -> dict:
    doc: dict[str, Any] = {"kind": "cover-certificate", "p": cert.p, "ok": cert.ok}
    if not cert.ok:
        doc["failure"] = cert.failure
        doc["residue"] = cert.residue
        if cert.indices:
            doc["indices"] = list(cert.indices)
        doc["message"] = cert.describe()
    doc["assignment"] = list(cert.assignment)
    return doc


def block_doc(block: ResidueBlock, index: int, q: int) -> dict:
    return {"index": index, "q": q, "start": block.start, "diff": block.diff,
            "len": block.len, "elements": sorted(block.elements())}


def partition_doc(partition: BlockPartition, indices: list[int], qs: list[int]) -> dict:
    blocks = []
    for block, i, q in zip(partition.blocks, indices, qs):
        entry = block_doc(block, i, q)
        if partition.normalized:
            entry["qtilde"] = block.diff
            entry["btilde"] = block.start
        blocks.append(entry)
    return {"kind": "block-partition", "p": partition.p,
            "normalized": partition.normalized, "blocks": blocks}


def tg_doc(tg: TgSequence, prof: GapProfile, three_gap: bool, ap: ApStructure,
           c2: Optional[C2Report] = None, c2_error: Optional[str] = None,
           q1: Optional[int] = None) -> dict:
    doc: dict[str, Any] = {
        "kind": "tg-analysis",
        "a": tg.a, "d": tg.d, "q": tg.q, "p": tg.p,
        "points": [int(x) for x in tg.points],
        "gaps": [int(x) for x in prof.gaps],
        "profile": {"sizes": {str(s): n for s, n in sorted(prof.sizes.items())},
                    "c": prof.c, "G": prof.G, "k": prof.k},
        "three_gap": three_gap,
        "ap_structure": {"kind": ap.kind, "diff": ap.diff,
                         "run_lengths": list(ap.run_lengths),
                         "matches_corollary": ap.diff_matches(tg.d, tg.p) if ap.diff is not None else None},
    }
    if q1 is not None:
        if c2 is None:
            doc["c2"] = {"q1": q1, "applicable": False, "reason": c2_error}
        else:
            doc["c2"] = {"q1": q1, "applicable": True,
                         "form": "three-size" if c2.three_sizes else "two-size",
                         "lhs": c2.lhs, "rhs": c2.rhs, "satisfied": c2.satisfied}
    return doc


def solution_doc(cert: SolutionCertificate) -> dict:
    return {"p": cert.p, "q": list(cert.q_tuple), "phases": list(cert.phases),
            "blocks": cert.blocks()}


def search_doc(report: SearchReport) -> dict:
    cfg = report.config
    return {
        "kind": "search-report",
        "config": {"n": cfg.n, "p_min": cfg.p_min, "p_max": cfg.p_max,
                   "require_distinct": cfg.require_distinct, "budget": cfg.budget},
        "complete": report.complete,
        "searched_through": report.searched_through,
        "bound": report.bound_statement(),
        "families": [{"p": p, "q": list(q)} for p, q in report.families()],
        "totals": {"tuples_examined": report.tuples_examined,
                   "tuples_pruned": report.tuples_pruned,
                   "cover_ops": report.ops,
                   "certificates": len(report.certificates)},
        "per_p": [{"p": s.p, "partitions": s.partitions, "tuples": s.tuples,
                   "solutions": s.solutions, "cover_ops": s.ops} for s in report.per_p],
        "certificates": [solution_doc(c) for c in report.certificates],
    }
