from .rules import Rule, Pattern, default_rules, load_rules, parse_rule, SIDE_CONDITIONS
from .saturate import (
    ALGEBRA,
    PREMISE,
    Derivation,
    ProofTrace,
    SaturationState,
    derive_algebra,
    extract_proof,
    match_theorems,
    replay_trace,
    saturate,
)

__all__ = [
    "Rule", "Pattern", "default_rules", "load_rules", "parse_rule", "SIDE_CONDITIONS",
    "ALGEBRA", "PREMISE", "Derivation", "ProofTrace", "SaturationState",
    "derive_algebra", "extract_proof", "match_theorems", "replay_trace", "saturate",
]
