"""Geometric Coxeter systems on Lorentz space: roots, weights, ball packings,
tangency graphs, and the census of connected level-2 graphs."""

from .graphs import (
    CoxeterGraph,
    EdgeLabel,
    GraphError,
    canonical_key,
    complete_graph,
    cycle_graph,
    gram_matrix,
    induced_subgraph,
    load_graph,
    parse_compact,
    parse_graph,
    path_graph,
    serialize_graph,
    to_compact,
    universal_graph,
)
from .forms import (
    Signature,
    SingularFormError,
    NotLorentzianError,
    TypeClass,
    classify_type,
    fundamental_weights,
    is_level_at_most,
    level,
    signature,
)
from .orbits import (
    LimitSample,
    ProjectivePoint,
    RootRecord,
    RootSource,
    VectorClass,
    WeightRecord,
    WeightSource,
    limit_sample,
    normalize_spacelike,
    projectivize,
    reflect,
    roots_up_to_depth,
    weights_up_to_length,
)
from .balls import (
    ClusterReport,
    EuclideanBall,
    LorentzFrame,
    PairKind,
    PairRelation,
    SphericalCap,
    cap_of,
    classify_pair,
    lorentz_frame,
    residual_margin,
    separation,
    stereographic,
    validate_cluster,
)
from .tangency import (
    Chamber,
    CoxeterComplex,
    InconsistencyError,
    LevelError,
    TangencyGraph,
    VertexClass,
    chambers_up_to_length,
    classify_vertex,
    geometric_oracle,
    is_strict_level2,
    tangency_graph,
)
from .census import (
    ADMISSIBLE_LABELS,
    CensusEntry,
    Family,
    census_report,
    enumerate_level1,
    enumerate_level2,
    nominate,
    write_census_csv,
    write_census_json,
)
from .groups import OrbitCapError

__version__ = "0.1.0"
