"""Exact class-2 quotient engine and claim verifier for the groups Γₙ⁴."""

from .engine import (
    GroupModel,
    NormalForm,
    RelationBasis,
    build_model,
    central_class,
    element_order,
    invariants,
    is_central,
    nf,
)
from .generators import GeneratorId, GeneratorTable, canonicalize, enumerate_generators
from .kernels import BACKEND
from .persist import load_model, save_model
from .words import parse_word

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GeneratorId",
    "GeneratorTable",
    "GroupModel",
    "NormalForm",
    "RelationBasis",
    "build_model",
    "canonicalize",
    "central_class",
    "element_order",
    "enumerate_generators",
    "invariants",
    "is_central",
    "load_model",
    "nf",
    "parse_word",
    "save_model",
]
