"""Entanglement distribution in generalized W-class states.

Submodules
----------
tensor    dense linear algebra kernels (partial trace, Jacobi eigensolver, Wootters lambdas)
states    GW state descriptions, partitions and their JSON formats
measures  concurrence, concurrence of assistance and Tsallis-q quantities
bounds    monogamy and polygamy bounds with explicit hypothesis checks
oracle    decomposition sampling and closed-form certification
figures   curve tables for the worked examples
fuzz      randomized sign checks
cli       the ``gwmono`` command
"""
from .bounds import BoundParams, BoundReport, HypothesisError
from .measures import MeasureValue
from .oracle import SamplingConfig, certify_gw_closed_forms
from .states import GWStateSpec, Partition, ParseError, ValidationError, build_gw_vector, party_weights
from .tensor import DomainError, ShapeError, SizeError, StateVector

__version__ = "0.1.0"
