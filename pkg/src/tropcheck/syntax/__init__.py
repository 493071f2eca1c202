from tropcheck.linear import LinearForm
from tropcheck.syntax.forms import (
    Expr,
    Lin,
    Min,
    Neg,
    NormalForm,
    Sum,
    TropicalMap,
    eval_expr,
    eval_tree,
    make_max,
    normalize,
    prune_redundant,
    sumset,
)
from tropcheck.syntax.parser import ParseError, format_map, parse_expr, parse_map, tokenize

__all__ = [
    "Expr",
    "Lin",
    "LinearForm",
    "Min",
    "Neg",
    "NormalForm",
    "ParseError",
    "Sum",
    "TropicalMap",
    "eval_expr",
    "eval_tree",
    "format_map",
    "make_max",
    "normalize",
    "parse_expr",
    "parse_map",
    "prune_redundant",
    "sumset",
    "tokenize",
]
