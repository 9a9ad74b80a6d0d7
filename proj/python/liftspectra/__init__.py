"""Random n-lifts of regular graphs: spectra, Monte Carlo campaigns, and
spectral-inequality checks. Thin re-export of the compiled module."""

try:
    from ._liftspectra import *  # noqa: F401,F403  (installed wheel layout)
    from ._liftspectra import __doc__  # noqa: F401
except ImportError:
    from _liftspectra import *  # noqa: F401,F403  (build-tree layout)
    from _liftspectra import __doc__  # noqa: F401
