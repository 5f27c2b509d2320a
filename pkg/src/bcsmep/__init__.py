"""Concurrence-based entanglement measures of the BCS ground state.

Per-mode and total concurrence of the pair condensate, the continuum
closed form in the cut-off/gap numbers (n1, n2), the macrocanonical
entanglement of pairing (MEP), a self-consistent gap solver, an exact
small-system oracle in the pair-occupation basis, and a materials report
pipeline.
"""

from .concurrence import (ConcurrenceResult, Method, concurrence_closed_form,
                          concurrence_discrete, entanglement_of_formation,
                          log_concurrence_quadrature, mep, mep_discrete,
                          partial_concurrence)
from .core import (BcsAmplitudes, DimensionlessPair, GapSolution,
                   MaterialParams, bcs_amplitudes, dimensionless_numbers,
                   dos_parabolic, gap_from_coupling, resolve_gap)
from .errors import (CapacityError, ConvergenceError, MaterialsFileError,
                     MissingDataError)
from .fock import MAX_MODES, PairModeState, build_bcs_state, overlap, time_reverse
from .gap import PhononSpectrum, coupling_from_spectrum, load_phonon_spectrum, solve_gap
from .materials import (MaterialsTable, MepReportRow, dump_materials,
                        load_default_materials, load_materials,
                        load_materials_file, mep_report, reference_neg_log10)

__all__ = [
    "BcsAmplitudes", "CapacityError", "ConcurrenceResult", "ConvergenceError",
    "DimensionlessPair", "GapSolution", "MAX_MODES", "MaterialParams",
    "MaterialsFileError", "MaterialsTable", "MepReportRow", "Method",
    "MissingDataError", "PairModeState", "PhononSpectrum", "bcs_amplitudes",
    "build_bcs_state", "concurrence_closed_form", "concurrence_discrete",
    "coupling_from_spectrum", "dimensionless_numbers", "dos_parabolic",
    "dump_materials", "entanglement_of_formation", "gap_from_coupling",
    "load_default_materials", "load_materials", "load_materials_file",
    "load_phonon_spectrum", "log_concurrence_quadrature", "mep",
    "mep_discrete", "mep_report", "overlap", "partial_concurrence",
    "reference_neg_log10", "resolve_gap", "solve_gap", "time_reverse",
]

__version__ = "0.1.0"
