"""JSON rendering of analysis reports.  Rationals are always ``"p/q"`` strings."""

from __future__ import annotations

import json
from typing import Optional, Sequence

from tropcheck.analysis.clarke import ClarkeSet, clarke_to_dict
from tropcheck.analysis.decide import AnalysisReport
from tropcheck.pieces import piece_to_dict


def _vec(v) -> list[str]:
    return [str(x) for x in v]


def report_to_dict(
    r: AnalysisReport,
    names: Sequence[str],
    clarke: Optional[Sequence[ClarkeSet]] = None,
) -> dict:
    out = {
        "verdict": r.verdict.value,
        "reason": None if r.reason is None else r.reason.value,
        "reason_pieces": list(r.reason_pieces),
        "pieces": r.n_pieces,
        "signs": {"pos": r.signs.pos, "neg": r.signs.neg, "zero": r.signs.zero},
        "degree": r.degree,
        "regular_value": None if r.regular_value is None else _vec(r.regular_value.y0),
        "regular_value_source": None if r.regular_value is None else _vec(r.regular_value.source_point),
        "checked_facets": None if r.regular_value is None else r.regular_value.checked_facets,
        "witnesses": [_vec(w) for w in r.witnesses],
        "inverse_pieces": None if r.inverse is None else [piece_to_dict(p, names) for p in r.inverse],
        "fast_path": None if r.fast_path is None else r.fast_path.value,
    }
    if r.diagnostics:
        out["diagnostics"] = r.diagnostics
    if clarke:
        out["clarke"] = [clarke_to_dict(c) for c in clarke]
    return out


def report_to_json(r: AnalysisReport, names: Sequence[str], clarke=None) -> str:
    return json.dumps(report_to_dict(r, names, clarke), indent=2)
