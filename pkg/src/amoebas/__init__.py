"""Trees with multiplicities that grow by extending copies of themselves.

The library enumerates copies of an amoeba inside a host tree, computes
minimal growths, classifies mortality with machine-checkable
certificates, searches for confining trees, decides the caterpillar
family exactly, and verifies growth logs.  A CLI and an HTTP session
service expose the same engine.
"""

from .caterpillar import (
    CaterpillarDecision,
    CaterpillarSpec,
    SlowVerdict,
    caterpillar_readings,
    decide_caterpillar,
    is_slow_amoeba,
    is_slow_sequence,
    mandated_roots,
    parse_caterpillar,
    recognize_caterpillar,
    shift_step,
)
from .engine import (
    BUDGET_EXHAUSTED,
    CONFINING_REACHED,
    FIRST_ALIVE,
    IMMORTAL,
    MORTAL,
    UNKNOWN,
    CensusRow,
    Classification,
    Colony,
    ConfiningTreeFound,
    ConfiningTreeReached,
    ExhaustedStateSpace,
    GrowthState,
    LogStep,
    MortalByDegree,
    RunResult,
    SequenceLog,
    SlowCaterpillar,
    Strategy,
    SurvivedBudget,
    classify,
    enumerate_amoebas,
    find_confining_tree,
    grow_once,
    initial_state,
    is_confining,
    replay,
    run_census,
    run_colony,
    run_generation,
    verify_log,
)
from .errors import (
    AmoebaError,
    BudgetExceeded,
    DeadCopyChosen,
    EmptyColony,
    InconsistentLog,
    IndexOutOfRange,
    MalformedInput,
    NotACopy,
    NotATree,
)
from .model import (
    Amoeba,
    Area,
    CopyEmbedding,
    CopyStatus,
    DegreeReport,
    GrowthSet,
    canonical_amoeba_code,
    check_area_properties,
    completion,
    copy_status,
    degree_check,
    ell_extension,
    enumerate_copies,
    extension_areas,
    minimal_growths,
    parse_amoeba,
    validate_copy,
)
from .serialize import (
    colony_to_json,
    dot_graph,
    log_lines,
    log_to_jsonl,
    parse_colony,
    parse_copy,
    parse_input,
    parse_log,
)
from .trees import (
    Tree,
    TreeMetrics,
    automorphism_orbits,
    canonical_code,
    count_free_trees,
    enumerate_free_trees,
    find_centers,
    full_tary_tree,
    parse_tree,
    rooted_code,
    tree_metrics,
)

__version__ = "0.1.0"
