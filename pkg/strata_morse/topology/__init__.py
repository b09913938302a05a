from strata_morse.topology.cohomology import (
    attracting_cohomology,
    cone_D,
    cone_N,
    disc_D,
    disc_N,
    expanding_cohomology,
    global_cohomology,
    suspension_cohomology,
)
from strata_morse.topology.perversity import (
    dual,
    is_self_dual,
    is_self_dual_space,
    orthocomplement,
    star_image,
    subspace_label,
    transform_perversity,
)
from strata_morse.topology.schemas import (
    Circle,
    Cone,
    Disc,
    GradedBasis,
    MiddleStructure,
    Point,
    Product,
    Smooth,
    SpaceExpr,
    Sphere,
    StratumInfo,
    Subspace,
    Suspension,
    Torus,
)
from strata_morse.topology.space import (
    circle,
    cone,
    describe,
    dimension,
    disc,
    dump_space,
    link_ambient,
    middle_basis,
    middle_structure,
    parse_space,
    point,
    primitive_cohomology,
    product,
    smooth,
    sphere,
    strata,
    suspension,
    torus,
    witt_check,
)

__all__ = [
    "Circle",
    "Cone",
    "Disc",
    "GradedBasis",
    "MiddleStructure",
    "Point",
    "Product",
    "Smooth",
    "SpaceExpr",
    "Sphere",
    "StratumInfo",
    "Subspace",
    "Suspension",
    "Torus",
    "attracting_cohomology",
    "circle",
    "cone",
    "cone_D",
    "cone_N",
    "describe",
    "dimension",
    "disc",
    "disc_D",
    "disc_N",
    "dual",
    "dump_space",
    "expanding_cohomology",
    "global_cohomology",
    "is_self_dual",
    "is_self_dual_space",
    "link_ambient",
    "middle_basis",
    "middle_structure",
    "orthocomplement",
    "parse_space",
    "point",
    "primitive_cohomology",
    "product",
    "smooth",
    "sphere",
    "star_image",
    "strata",
    "subspace_label",
    "suspension",
    "suspension_cohomology",
    "torus",
    "transform_perversity",
    "witt_check",
]
