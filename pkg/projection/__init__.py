from .shapes import (
    ScopeSplit,
    Shape,
    ShapeLayer,
    scope_split,
    shape_layers,
    join_shapes,
    normalize_root,
)
from .projector import ShapeProjector, project, negate, forall_project, pick_output
