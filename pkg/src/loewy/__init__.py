"""Finite bounded lattices: socle, radical, Loewy series, property flags and law suites."""

from .analysis import (
    AnalysisReport,
    LoewySeries,
    analyze,
    atoms,
    coatoms,
    complement_of,
    essential_elements,
    is_boolean,
    is_catenarian,
    is_chain,
    is_distributive,
    is_modular,
    is_p_extension,
    join_irreducibles,
    lattice_length,
    loewy_series,
    meet_irreducibles,
    radical,
    socle,
)
from .core import LIMITS, ElementSet, FiniteLattice, are_isomorphic, build_from_covers, dual, interval, join, meet, product
from .errors import LatticeError
from .families import (
    FamilySpec,
    boolean_cube,
    chain,
    diamond,
    divisor_lattice,
    grid,
    pentagon,
    random_distributive,
    subgroup_lattice_cyclic,
    subspace_lattice,
    worked_example,
)
from .io import export_dot, parse_lattice, write_lattice
from .suites import (
    CampaignSpec,
    VerificationReport,
    run_campaign,
    verify_core_laws,
    verify_cyclic_divisor_laws,
    verify_distributive_laws,
    verify_p_extension_laws,
    verify_product_laws,
)

__version__ = "0.1.0"
