"""Finite join-semilattices: ideals, Pierce congruences, conjunctivity, spectra and free distributive lattices."""

from .core import (
    JoinSemilattice,
    MorphismTable,
    from_join_table,
    from_masks,
    from_set_family,
)
from .distributivity import is_distributive, max_not_prime_witness, prime_spectrum
from .dlat import classify_base, dlat_r1_isomorphism, free_dlat, overline_w, wl_lattice
from .errors import LatticeError
from .ideals import ideals_of, maximal_ideals, prime_ideals
from .io import dumps, load, loads
from .pierce import conjunctivity_profile, is_ideally_conjunctive, pierce_congruence, quotient
from .search import canonical_form, enumerate_semilattices, minimal_counterexample, run_conjectures
from .spectrum import hull_and_cover, q_phi_analysis, roundtrip_representation, spec_max

__version__ = "0.1.0"

__all__ = [
    "JoinSemilattice",
    "MorphismTable",
    "from_join_table",
    "from_masks",
    "from_set_family",
    "is_distributive",
    "max_not_prime_witness",
    "prime_spectrum",
    "classify_base",
    "dlat_r1_isomorphism",
    "free_dlat",
    "overline_w",
    "wl_lattice",
    "LatticeError",
    "ideals_of",
    "maximal_ideals",
    "prime_ideals",
    "dumps",
    "load",
    "loads",
    "conjunctivity_profile",
    "is_ideally_conjunctive",
    "pierce_congruence",
    "quotient",
    "canonical_form",
    "enumerate_semilattices",
    "minimal_counterexample",
    "run_conjectures",
    "hull_and_cover",
    "q_phi_analysis",
    "roundtrip_representation",
    "spec_max",
]
