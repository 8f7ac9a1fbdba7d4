"""Sequential probability estimation over finite alphabets, with teeth.

The package bundles the probability-smoothing predictor family and its
competitors (KT variants, PTW), piecewise stationary sources to race them
against, evaluators and fuzz oracles for the redundancy guarantees, and an
arithmetic-coding back end that turns any of the models into a working
compressor.
"""

from .distributions import as_distribution, as_rng, random_distribution, uniform
from .measures import (
    CodeLengthLedger,
    entropy,
    kl_divergence,
    l1_variation,
    model_code_length,
    nats_to_bits,
)
from .models import (
    KtModel,
    PsModel,
    PsParams,
    PtwModel,
    fixed_schedule,
    kt_probabilities,
    ps1_model,
    ps2_model,
    smooth_update,
    varying_schedule,
)
from .pws import PwsSpec, sample_pws, sample_sequence
from .lemmas import (
    InequalityCheck,
    check_eps_proximity,
    check_kl_l1,
    check_progress_invariant,
    check_segment_sum,
    check_sqrt_log_sum,
    fuzz_lemmas,
)
from .bounds import (
    BoundReport,
    check_fixed_bound,
    check_varying_bound,
    fixed_rate_bound,
    varying_rate_bound,
    verify_bounds,
)
from .codec import CodecError, ModelConfig, decode, encode, parse_header
from .experiment import (
    ExperimentConfig,
    ResultTable,
    emit_csv,
    emit_plot,
    parse_config,
    read_csv,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "CodeLengthLedger",
    "CodecError",
    "ExperimentConfig",
    "InequalityCheck",
    "KtModel",
    "ModelConfig",
    "PsModel",
    "PsParams",
    "PtwModel",
    "PwsSpec",
    "ResultTable",
    "as_distribution",
    "as_rng",
    "check_eps_proximity",
    "check_fixed_bound",
    "check_kl_l1",
    "check_progress_invariant",
    "check_segment_sum",
    "check_sqrt_log_sum",
    "check_varying_bound",
    "decode",
    "emit_csv",
    "emit_plot",
    "encode",
    "entropy",
    "fixed_rate_bound",
    "fixed_schedule",
    "fuzz_lemmas",
    "kl_divergence",
    "kt_probabilities",
    "l1_variation",
    "model_code_length",
    "nats_to_bits",
    "parse_config",
    "parse_header",
    "ps1_model",
    "ps2_model",
    "random_distribution",
    "read_csv",
    "run_experiment",
    "sample_pws",
    "sample_sequence",
    "smooth_update",
    "uniform",
    "varying_rate_bound",
    "varying_schedule",
    "verify_bounds",
]
