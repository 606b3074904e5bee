"""Offline figures from locq sweep and bench CSV files."""

from .scaling import fit_slope, plot_scaling
from .schema import BENCH_COLUMNS, SWEEP_COLUMNS, SchemaError
from .threshold import plot_threshold

__version__ = "0.1.0"
