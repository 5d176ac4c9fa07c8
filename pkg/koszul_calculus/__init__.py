"""
koszul_calculus
===============
Exact Koszul calculus of N-homogeneous algebras: Koszul (co)homology, cup and
cap products, higher Koszul (co)homology and the comparison with the bar
resolution, over Q and prime fields.
"""

from koszul_calculus.calculus import KoszulCalculus
from koszul_calculus.config import Config
from koszul_calculus.exceptions import KoszulError
from koszul_calculus.graded_algebra import GradedAlgebra, Presentation, build_algebra
from koszul_calculus.koszul_complex import BimoduleComplex, KoszulComplex
from koszul_calculus.presentation import catalog_presentation, parse_presentation

__version__ = Config.VERSION

__all__ = [
    'BimoduleComplex',
    'Config',
    'GradedAlgebra',
    'KoszulCalculus',
    'KoszulComplex',
    'KoszulError',
    'Presentation',
    'build_algebra',
    'catalog_presentation',
    'parse_presentation',
]
