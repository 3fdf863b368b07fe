"""bigonlab: geodesic bigon statistics and hyperbolicity criteria at desk
scale.

Words are Python strings over single-letter generators; an uppercase letter
is the inverse of its lowercase generator.  See the README for a tour.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .bigons import (Band, StreamStats, WidthProfile, ball_stats,
                     dense_values, enumerate_bigons, exceedance,
                     find_regular_segment, geo_distance, is_bigon, is_fork,
                     make_band, max_small_jumper_gap, rank, small_jumpers,
                     sup_exceedance, width_profile)
from .cayley import (CapExceeded, GeodesicPath, GraphBall, TrustError,
                     build_ball, distance, enumerate_geodesics,
                     gromov_delta, ingest_graph)
from .constants import (ConstantBundle, ParameterError, certified_floor_log,
                        derive_R, n_sequence, pipeline)
from .presentation import (Presentation, PresentationError,
                           parse_presentation, preset, symmetrize,
                           validate_word)
from .vkarea import (AreaError, AreaResult, area, bigon_area,
                     closed_boundary_word, omega_estimate, ratio_stats,
                     replay_witness, select_separated)
from .wordproblem import (Strategy, StrategyError, auto_strategy,
                          complete_rewriting, normal_form,
                          small_cancellation_ratio, words_equal)
from .words import cyclic_reduce, free_reduce, invert, is_reduced

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND", "__version__",
    "Band", "StreamStats", "WidthProfile", "ball_stats", "dense_values",
    "enumerate_bigons", "exceedance", "find_regular_segment", "geo_distance",
    "is_bigon", "is_fork", "make_band", "max_small_jumper_gap", "rank",
    "small_jumpers", "sup_exceedance", "width_profile",
    "CapExceeded", "GeodesicPath", "GraphBall", "TrustError", "build_ball",
    "distance", "enumerate_geodesics", "gromov_delta", "ingest_graph",
    "ConstantBundle", "ParameterError", "certified_floor_log", "derive_R",
    "n_sequence", "pipeline",
    "Presentation", "PresentationError", "parse_presentation", "preset",
    "symmetrize", "validate_word",
    "AreaError", "AreaResult", "area", "bigon_area", "closed_boundary_word",
    "omega_estimate", "ratio_stats", "replay_witness", "select_separated",
    "Strategy", "StrategyError", "auto_strategy", "complete_rewriting",
    "normal_form", "small_cancellation_ratio", "words_equal",
    "cyclic_reduce", "free_reduce", "invert", "is_reduced",
]
