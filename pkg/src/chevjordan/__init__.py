"""Exact Jordan block and stabiliser computations for exceptional Lie algebras over Z."""

from .catalogue import load_expected, load_reps
from .chevalley import algebra
from .jordan import JordanReport, Partition, analyze_matrix, analyze_orbit, compare_reports
from .modules import module_action
from .roots import cartan_matrix, root_system

__version__ = "0.1.0"
