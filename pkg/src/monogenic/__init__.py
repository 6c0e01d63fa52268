"""Monogenic function spaces, Heisenberg-type groups and their wavelet transforms."""
from .clifford import Multivector
from .coherent import CoherentSystem, NilSystem, OscillatorSystem
from .cpoly import CliffPoly, ck_extend, dirac_apply, v_monomial
from .verify import SuiteConfig, emit_report, run_suite

__all__ = [
    "Multivector", "CliffPoly", "ck_extend", "dirac_apply", "v_monomial",
    "CoherentSystem", "OscillatorSystem", "NilSystem",
    "SuiteConfig", "run_suite", "emit_report",
]
