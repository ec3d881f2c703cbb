"""Equivalence classes of preference-ordering triangles and their census in social networks."""

from .perm import (
    AlternativeAlphabet,
    Permutation,
    compose,
    element_order,
    format_ordering,
    identity,
    inverse,
    kendall_tau_distance,
    parse_ordering,
    restrict_ordering,
)
from .triads import (
    ClassDescriptor,
    ClassTable,
    canonicalize,
    case_number,
    classify3,
    describe_class,
    enumerate_classes,
    make_triad,
)
from .counting import class_count, order3_count, orbit_case_counts
from .graph import (
    Graph,
    closed_triangle_fraction,
    degree_sequence,
    from_edge_list,
    read_edge_list,
    rewire,
    triangles,
)
from .dataset import (
    PreferenceDataset,
    PreferenceSet,
    empirical_distribution,
    extract_subsets,
    generate_synthetic_dataset,
    load_dataset,
    sample_assignment,
    save_dataset,
)
from .analysis import ClassHistogram, ExperimentConfig, census, compare, null_ensemble, run_experiment

__version__ = "0.1.0"
