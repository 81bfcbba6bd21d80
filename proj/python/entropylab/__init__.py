"""Exact symbolic-dynamics laboratory: subshifts, clopen sets, discrete
measures with exact rational distances, cover entropy, independence sets,
and the matrix certificate pipeline. All heavy lifting happens in the
compiled _core extension."""

try:
    from . import _core as _c
except ImportError:  # build tree: the extension sits next to the package
    import _core as _c

__all__ = [
    "ClopenSet",
    "DiscreteMeasure",
    "FiniteClosedSet",
    "Point",
    "Subshift",
    "cover_entropy_profile",
    "entropy_witness_pipeline",
    "hausdorff_distance",
    "in_m_n",
    "induce_hyper",
    "is_standard_cover",
    "max_independence_density",
    "measure_of",
    "metric",
    "prohorov_flow",
    "prohorov_subset",
    "pushforward",
    "r_m",
    "run_scenario_file",
    "verify_independence",
]

globals().update({name: getattr(_c, name) for name in __all__})
