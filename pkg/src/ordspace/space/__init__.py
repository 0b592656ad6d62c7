"""Space expressions over countable ordinals and their order topology."""

from .expr import *  # noqa: F401,F403
from .expr import __all__ as _expr_all
from .query import (  # noqa: F401
    Dir, EmptyEnd, EndpointSide, Extreme, Immediate, LimitSide, Mode, NotWellOrdered, OpenEnd,
    OrderNbhd, Profile, RectNbhd, approach_point, basis, bottom, cb_derivative, cb_rank,
    compare_points, derived_expr, down, end_point, enumerate_points, expand_lgamma, has_limit_point,
    height, is_empty, is_isolated, is_well_ordered, lgamma, lgamma_formal, max_point, member,
    min_point, neighbor, omit_position, order_compare, order_type, position, profile, sort_points,
    top, up,
)

__all__ = list(_expr_all) + [
    "Dir", "EmptyEnd", "EndpointSide", "Extreme", "Immediate", "LimitSide", "Mode", "NotWellOrdered",
    "OpenEnd", "OrderNbhd", "Profile", "RectNbhd", "approach_point", "basis", "bottom",
    "cb_derivative", "cb_rank", "compare_points", "derived_expr", "down", "end_point",
    "enumerate_points", "expand_lgamma", "has_limit_point", "height", "is_empty", "is_isolated",
    "is_well_ordered", "lgamma", "lgamma_formal", "max_point", "member", "min_point", "neighbor",
    "omit_position", "order_compare", "order_type", "position", "profile", "sort_points", "top", "up",
]
