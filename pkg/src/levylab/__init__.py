"""Levy-hierarchy classification, ordinal-bounded quantifiers, the
choice-elimination transfer gate and finite-model absoluteness checks for
sentences of set theory."""

from .absoluteness import SuiteReport, absoluteness_suite, enumerate_transitive_pairs
from .classify import RuleSet, TraceNode, classify, delta_refine, is_ordinal_bounded_only, replay
from .errors import LevyError
from .hf import HfSet, TransitiveModel, build_v, transitive_close
from .levy import LevyClass
from .normalize import PrenexForm, contract_blocks, desugar_ord, to_nnf, to_prenex
from .parser import parse, print_formula
from .partition import PartitionStatementSpec, make_partition_statement
from .registry import PredicateInfo, Registry
from .semantics import evaluate
from .syntax import Formula, free_vars, rename_fresh
from .transfer import ParameterDeclaration, TransferVerdict, certify_upwards, check_transfer

__version__ = "0.1.0"

__all__ = [
    "Formula", "HfSet", "LevyClass", "LevyError", "ParameterDeclaration", "PartitionStatementSpec",
    "PredicateInfo", "PrenexForm", "Registry", "RuleSet", "SuiteReport", "TraceNode",
    "TransferVerdict", "TransitiveModel", "absoluteness_suite", "build_v", "certify_upwards",
    "check_transfer", "classify", "contract_blocks", "delta_refine", "desugar_ord",
    "enumerate_transitive_pairs", "evaluate", "free_vars", "is_ordinal_bounded_only",
    "make_partition_statement", "parse", "print_formula", "rename_fresh", "replay",
    "to_nnf", "to_prenex", "transitive_close",
]
