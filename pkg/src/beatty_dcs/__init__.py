"""Disjoint covering systems of rational Beatty sequences."""

from .core import (
    BeattySpec,
    BeattySystem,
    CoverCertificate,
    ResidueBlock,
    classify_union,
    complement,
    member,
    normalize_offset,
    qbar,
    residue_set,
    verify_dcs,
)
from .correspondence import (
    BlockPartition,
    blocks_from_system,
    check_block_shift,
    check_root_sum,
    gamma_normalize,
)
from .search import (
    SearchConfig,
    enumerate_q_tuples,
    exact_cover_search,
    fraenkel_system,
    search_conjecture,
)
from .tg import build_tg, c2_bounds, check_three_gap, classify_ap_structure, gap_profile

__version__ = "0.1.0"
