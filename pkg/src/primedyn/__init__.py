"""primedyn: prime residue and gap sequences through symbolic dynamics.

Sequence constructions from primes, exact block censuses, Renyi entropy
spectra, stochastic null models, a gap-block admissibility oracle backed by
Hardy-Littlewood constants, and chaos-game attractor rendering.
"""

from .blocks import BlockCensus, count_blocks, count_blocks_chunked, missing_blocks, observed_block_set
from .entropy import DEFAULT_BETA_GRID, RenyiResult, entropy_rate_curve, renyi_block_entropy, spectrum_proxy
from .gaptheory import (
    GapResidueBlock,
    HLValue,
    aux_products,
    block_density,
    block_density_numerator,
    covering_check,
    enumerate_gap_blocks,
    hl_constant,
    hl_single_gap,
    is_admissible_gap_block,
    residue_density,
)
from .ifs import IFSConfig, OccupancyGrid, box_counting_dimension, chaos_game_render, grid_similarity
from .maps import OrbitSpec, iterate_map, map_sequence, symbolize_orbit
from .nullmodels import NullSpec, generate_null, type2_counts, type2_recursion_check
from .primes import PrimeTable, first_n_primes, logarithmic_integral, sieve_upto
from .report import report_paper
from .sequences import (
    SymbolSequence,
    gap_residues,
    prime_residues,
    read_sequence,
    transition_sequence,
    two_class_sequence,
    write_sequence,
)

__version__ = "0.1.0"
