"""aspdebug: interactive query-based debugging of answer-set programs."""

from .program import (
    Atom,
    AtomCapExceededError,
    GroundProgram,
    Interpretation,
    ParseError,
    Program,
    ProgramError,
    Rule,
    Term,
    atom,
    atoms,
    atom_universe,
    ground,
    parse_program,
    program_to_text,
)
from .semantics import (
    Support,
    answer_sets,
    dependency_graph,
    is_answer_set,
    is_applicable,
    is_model,
    is_satisfied,
    reduct,
    supports,
    unfounded_loops,
)
from .explain import (
    ErrorAtom,
    ErrorKind,
    error_base,
    error_universe,
    explains,
    interpretations_of,
    is_admissible,
    uf_loop,
    unsatisfied,
    unsupported,
    violated,
)
from .diagnosis import (
    DPI,
    Diagnosis,
    DiagnosisSearch,
    SignedAtomSet,
    complement,
    compute_diagnoses,
    diagnosis_interpretations,
    feasible,
    meta_satisfies,
    normalize_tests,
    verify_diagnosis,
)
from .query import (
    Classification,
    Partition,
    apply_answer,
    apply_test_answer,
    bayes_update,
    classify,
    common_atoms,
    diagnosis_prior,
    find_partitions,
    query_probability,
    score_entropy,
    score_split,
    select_query,
)
from .session import (
    Session,
    SessionConfig,
    SimulatedOracle,
    deserialize,
    replay_session,
    run_with_oracle,
    serialize,
    start_session,
    submit_answer,
)

__version__ = "0.1.0"
