from tropcheck.analysis.clarke import (
    ClarkeSet,
    ClarkeVerdict,
    clarke_at,
    clarke_matrices,
    clarke_to_dict,
    segment_det_poly,
    segment_singular,
)
from tropcheck.analysis.decide import (
    AnalysisReport,
    Fibre,
    NotInvertible,
    Reason,
    RegularValueCertificate,
    RetriesExhausted,
    SignSummary,
    Verdict,
    decide_isomorphism,
    degree,
    eval_piecewise,
    facet_image_hits,
    find_regular_value,
    invert,
    invert_pieces,
    is_regular_value,
    jacobian_signs,
    plane_fast_path,
    preimage,
)
from tropcheck.analysis.report import report_to_dict, report_to_json

__all__ = [
    "AnalysisReport",
    "ClarkeSet",
    "ClarkeVerdict",
    "Fibre",
    "NotInvertible",
    "Reason",
    "RegularValueCertificate",
    "RetriesExhausted",
    "SignSummary",
    "Verdict",
    "clarke_at",
    "clarke_matrices",
    "clarke_to_dict",
    "decide_isomorphism",
    "degree",
    "eval_piecewise",
    "facet_image_hits",
    "find_regular_value",
    "invert",
    "invert_pieces",
    "is_regular_value",
    "jacobian_signs",
    "plane_fast_path",
    "preimage",
    "report_to_dict",
    "report_to_json",
    "segment_det_poly",
    "segment_singular",
]
