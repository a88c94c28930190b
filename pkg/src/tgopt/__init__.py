"""Sequential single- and two-gate optimizers for parameterized quantum
circuits: Fraxis, FQS, and their two-gate extensions TGF and TGFQS, with a
dense statevector simulator, Pauli observables with optional shot noise,
spin/molecular/fidelity cost functions, and a benchmark harness.
"""

__version__ = "0.1.0"

from .ansatz import (
    AnsatzSpec,
    CostEvaluator,
    ParameterSet,
    eval_count_audit,
    run_circuit,
    run_with_replacements,
)
from .backend import available_backends, backend_name, set_backend
from .errors import CapacityError, ConfigError, ParseError
from .experiment import (
    ExperimentConfig,
    ExperimentResult,
    compare_report,
    emit_csv,
    emit_json,
    run_experiment,
    run_single,
)
from .gates import (
    basis_op,
    basis_sum_op,
    gate_from_axis,
    gate_from_quaternion,
    random_unit_axis,
    random_unit_quaternion,
)
from .models import (
    FermiHubbardParams,
    InfidelityCost,
    TfimParams,
    fermi_hubbard_hamiltonian,
    haar_random_state,
    infidelity_observable,
    load_hamiltonian_file,
    tfim_hamiltonian,
)
from .paulis import (
    PauliObservable,
    PauliString,
    ShotConfig,
    expectation_exact,
    expectation_shots,
    ground_energy,
    parse_hamiltonian_text,
    to_dense,
)
from .single_gate import (
    LocalQuadraticForm,
    build_fqs_matrix,
    build_fraxis_matrix,
    min_eigvec,
    single_gate_sweep,
)
from .statevector import StateVector, apply_1q, apply_cz, init_zero, inner_product
from .trace import RunTrace, UpdateRecord
from .two_gate import (
    CoeffTensor,
    build_coeff_tensor,
    eval_quartic,
    make_pairs,
    minimize_on_spheres,
    quartic_value_and_grad,
    two_gate_sweep,
)
