"""Hochschild cohomology and Gerstenhaber brackets of twisted tensor products k[x] (x)_tau k[y]."""

from .algebra import AlgebraElement, TwistSpec, twisted_algebra

__all__ = ["AlgebraElement", "TwistSpec", "twisted_algebra", "clear_caches"]


def clear_caches():
    """Drop every per-twist cache, so the next computation starts cold."""
    from . import algebra, bracket, cohomology, koszul, resolution

    algebra.twisted_algebra.cache_clear()
    koszul.lift_twist.cache_clear()
    for fn in (resolution.resolution, resolution.solve_chain_lift, resolution.inverse_chain_lift,
               resolution._composite_generators, resolution.delta_correction,
               resolution._delta_generators):
        fn.cache_clear()
    bracket._engines.clear()
    cohomology._pieces.clear()
