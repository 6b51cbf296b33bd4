"""Prioritized default circumscription: transform to parallel defaults and
reason over preferred models by brute force."""

from ._core import (
    CapExceeded,
    CycleError,
    Error,
    NotStratifiedError,
    ParseError,
    Theory,
    ValidationError,
    circ_equivalent,
    encode_abnormality,
    encode_program,
    fixtures_to_defaults,
    output_size,
    perfect_model,
    preferred_models,
    preorder_equivalent_to_transform,
    query,
    run_cli,
    transform,
    transform_all,
    verify_special_case,
)


def load(path):
    """Read a theory file."""
    with open(path, encoding="utf-8") as f:
        return Theory.parse(f.read())


__all__ = [
    "CapExceeded",
    "CycleError",
    "Error",
    "NotStratifiedError",
    "ParseError",
    "Theory",
    "ValidationError",
    "circ_equivalent",
    "encode_abnormality",
    "encode_program",
    "fixtures_to_defaults",
    "load",
    "output_size",
    "perfect_model",
    "preferred_models",
    "preorder_equivalent_to_transform",
    "query",
    "run_cli",
    "transform",
    "transform_all",
    "verify_special_case",
]
