"""
cyeq: exact arithmetic toolkit for fourth-order differential equations of
Calabi-Yau type written in theta-form.

Everything is computed over the rationals; no floating point is used.
"""

__version__ = "0.1.0"

from .exact import Rat, Poly, PowerSeries, RatFunc
from .operator import (ThetaOperator, make_operator, apply, to_classical, from_classical,
                       indicial, indicial_at, local_exponents, normalize, translate_mum,
                       reflect_infinity, scale_z, scaling_between, INFINITY)
from .frobenius import (holomorphic_coeffs, log_coeffs, frobenius_pair, FrobeniusPair,
                        mirror_map, yukawa_instantons, InstantonReport, lambert_inversion,
                        lambert_sum, fingerprint, kq_equivalent, KqWitness, power_exponents,
                        powers_of, PowerExponents, INDETERMINATE)
from .criteria import (classify, CyVerdict, Check, check_mum, check_selfdual, check_integrality,
                       check_instantons, analyze_spectrum, enumerate_spectra)
from .formula import Formula, formula_parse, formula_eval
from .constructions import hadamard_series, fit_operator, FitSpec, NotFound, verify_entry
from .cyop import parse_cyop, serialize_cyop, load_dataset, dataset_index, DatasetRecord

__all__ = [n for n in dir() if not n.startswith("_")]
