"""Approximation in reproducing kernel Hilbert spaces against weighted data.

Submodules:

* :mod:`rkhs_approx.core` - scalar fields, points, finitely supported measures;
* :mod:`rkhs_approx.kernels` - kernel registry, Gram assembly, span algebra;
* :mod:`rkhs_approx.interpolate` - minimum-norm kernel least squares;
* :mod:`rkhs_approx.solver` - measure-weighted regularized approximation;
* :mod:`rkhs_approx.frames` - frame bounds / norm equivalence on spans;
* :mod:`rkhs_approx.hardy` - the Hardy-space disk study with quadrature;
* :mod:`rkhs_approx.cli` - JSON-driven command line front end.
"""

from ._backend import COMPILED, backend_name
from .core import (
    BoxSampler,
    DiscreteMeasure,
    DiskSampler,
    FMeasure,
    empirical_measure,
    make_discrete_measure,
    make_fmeasure,
    total_variation,
)
from .kernels import (
    Bergman,
    CustomGram,
    Gaussian,
    GramMatrix,
    Laplacian,
    Polynomial,
    Szego,
    cross_matrix,
    embed_fmeasure,
    evaluate,
    gram,
    min_eigenvalue,
    rkhs_norm_sq,
)
from .interpolate import InterpolationResult, min_norm_interpolate, pseudo_solve
from .solver import (
    EpsInsensitive,
    Huber,
    IterativeOptions,
    Power,
    ProblemSpec,
    Solution,
    Squared,
    gradient,
    objective,
    representer_certificate,
    solve,
    solve_closed_form,
    solve_iterative,
)
from .frames import FrameBounds, frame_bounds_p2, frame_ratio_sample, norm_equivalence_report

__version__ = "0.1.0"

__all__ = [
    "BoxSampler",
    "Bergman",
    "COMPILED",
    "CustomGram",
    "DiscreteMeasure",
    "DiskSampler",
    "EpsInsensitive",
    "FMeasure",
    "FrameBounds",
    "Gaussian",
    "GramMatrix",
    "Huber",
    "InterpolationResult",
    "IterativeOptions",
    "Laplacian",
    "Polynomial",
    "Power",
    "ProblemSpec",
    "Solution",
    "Squared",
    "Szego",
    "backend_name",
    "cross_matrix",
    "embed_fmeasure",
    "empirical_measure",
    "evaluate",
    "frame_bounds_p2",
    "frame_ratio_sample",
    "gradient",
    "gram",
    "make_discrete_measure",
    "make_fmeasure",
    "min_eigenvalue",
    "min_norm_interpolate",
    "norm_equivalence_report",
    "objective",
    "pseudo_solve",
    "representer_certificate",
    "rkhs_norm_sq",
    "solve",
    "solve_closed_form",
    "solve_iterative",
    "total_variation",
]
