"""Measures, covers and brute-force oracles for symmetric subsets of the hypercube."""
from .errors import BoundExceeded, DomainError
from .symcore import (
    IndexWitness,
    PeripheralInterval,
    PointSet,
    SymmetricSet,
    canonical_weight_window,
    complement_transform,
    index_complexity_bruteforce,
    index_complexity_symmetric,
    inn_measure,
    inner_interval,
    is_peripheral,
    lambda_bar,
    lambda_measure,
    mu,
    mu_bar,
    out_measure,
    outer_interval,
    separation,
    separation_exhaustive,
)
from .blockcore import (
    BlockStructure,
    BlockSymmetricSet,
    block_index_complexity,
    outer_intact_check,
    pdc_check,
    poset_extremes,
    prefix_set,
)
from .polyalg import (
    Hyperplane,
    HyperplaneFamily,
    Polynomial,
    derivative,
    multiplicity_at,
    product_of_affine,
    taylor_shift,
)
from .covers import CoverSpec, VerificationReport, verify_cover
from .oracles import bepc_oracle, ehc_oracle, enumerate_cube_flats, epc_oracle

__version__ = "0.1.0"
