"""Shipped weight domains and the encoders that target them."""

from .conditional import ConditionalPDS, Conditions, cond_reach, conditional_ws
from .minheight import INF, MinHeight, minheight_pds, minheight_semiring, minheight_ws
from .relations import Relations, encode_pds_as_relations, relation_reach, relations_ws
from .trpds import TrFun, TrPDS, TransductionFunctions, tr_reach, trpds_ws
from .wspds import IdealFunctions, Wspds, cover, wspds_ws

__all__ = [
    "ConditionalPDS", "Conditions", "cond_reach", "conditional_ws",
    "INF", "MinHeight", "minheight_pds", "minheight_semiring", "minheight_ws",
    "Relations", "encode_pds_as_relations", "relation_reach", "relations_ws",
    "TrFun", "TrPDS", "TransductionFunctions", "tr_reach", "trpds_ws",
    "IdealFunctions", "Wspds", "cover", "wspds_ws",
]


def default_structure(domain: str, probe_bound: int = 2, cap: int = 10_000):
    """A small, fixed instance of each shipped weight structure (used by law suites)."""
    from .. import reglang as R
    from .. import wqo as W

    g = ("a", "b")
    if domain == "minheight":
        return minheight_ws(g)
    if domain == "relations":
        return relations_ws(g)
    if domain == "conditional":
        a_star = R.from_table(g, 1, [(0, "a", 0)], 0, [0])
        has_b = R.from_table(g, 2, [(0, "a", 0), (0, "b", 1), (1, "a", 1), (1, "b", 1)], 0, [1])
        even = R.from_table(g, 2, [(0, "a", 1), (0, "b", 1), (1, "a", 0), (1, "b", 0)], 0, [0])
        conds = (a_star, has_b, even)
        ws, _ = conditional_ws(ConditionalPDS(["p"], g, [("p", "a", "p", (), c) for c in conds]), cap=cap)
        return ws
    if domain == "trpds":
        swap = R.letter_relation(g, [("a", "b"), ("b", "a")])
        erase = R.letter_relation(g, [("a", "a"), ("b", "a")])
        ws, _ = trpds_ws(TrPDS(["p"], g, [("p", "a", "p", (), t) for t in (swap, erase)]), cap=cap)
        return ws
    if domain == "wspds":
        order = W.FiniteOrder(["lo", "mid", "hi"], [("lo", "mid"), ("mid", "hi")])
        up = W.FiniteTransfer(order, {"lo": ("mid",), "mid": ("hi",), "hi": ("hi",)})
        split = W.FiniteTransfer(order, {"mid": ("lo", "lo"), "hi": ("mid", "lo")})
        return IdealFunctions(order, [up, split], probe_bound=probe_bound)
    if domain == "wspds-vector":
        order = W.VectorOrder(2)
        return IdealFunctions(order, [W.VectorTransfer(order, (1, 1), [(0, 1), (1, 0)]),
                                      W.VectorTransfer(order, (0, 1), [])], probe_bound=probe_bound)
    raise ValueError(f"unknown domain {domain!r}")


SHIPPED = ("minheight", "relations", "conditional", "trpds", "wspds", "wspds-vector")
__all__ += ["default_structure", "SHIPPED"]
