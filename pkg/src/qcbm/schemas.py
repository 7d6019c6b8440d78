"""Checked-in column manifests for every CSV the CLI emits.

Writers import these tuples, and tests validate emitted headers against
them, so a schema change is always an explicit edit here.
"""

SWEEP_COLUMNS = (
    "p",
    "n_params",
    "loss_q1",
    "loss_med",
    "loss_q3",
    "tts_q1",
    "tts_med",
    "tts_q3",
    "n_runs",
    "n_failures",
)

QFI_COLUMNS = ("p", "n_params", "qfi_rank", "d_c")

GRADVAR_COLUMNS = (
    "n",
    "target",
    "p",
    "n_params",
    "median_var",
    "iqr_var",
    "median_linf",
    "iqr_linf",
)

BOUNDS_COLUMNS = (
    "n",
    "d_c",
    "dla_dim",
    "p_to_dc",
    "p_to_dla",
    "ref_p_to_dc",
    "ref_p_to_dla",
    "flags",
)

RUN_FILENAME = "run_{n}q_{p}p_{target}_{index}.json"
