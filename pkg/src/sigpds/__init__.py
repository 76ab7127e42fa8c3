"""Reachability for weighted pushdown systems over semirings indexed by
stack signatures."""

from .algebra import BULLET, IndexedSemiring, WeightStructure, flatten, lift, naive_add
from .saturation import WeightedAutomaton, delta, presaturate, reach_regular, saturate, saturate_trace
from .signatures import BOT, TOP, UNIT, Sig, align, join, leq, mul, sig, strictly_compatible, suffix_of
from .wpds import Config, Pds, Rule, WeightedPDS, check_prop_conv, config_transitions, sig_transitions

__all__ = [
    "BULLET", "IndexedSemiring", "WeightStructure", "flatten", "lift", "naive_add",
    "WeightedAutomaton", "delta", "presaturate", "reach_regular", "saturate", "saturate_trace",
    "BOT", "TOP", "UNIT", "Sig", "align", "join", "leq", "mul", "sig", "strictly_compatible", "suffix_of",
    "Config", "Pds", "Rule", "WeightedPDS", "check_prop_conv", "config_transitions", "sig_transitions",
]
