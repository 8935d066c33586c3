"""Numerical building blocks: quadrature, orthogonal polynomials, eigensolver, roots, Bessel functions."""

from .bessel import bessel_I, bessel_I_prime, bessel_J, bessel_J_prime
from .eigen import EigenDecomposition, GalerkinPair, cholesky, jacobi_eigh, sym_generalized_eig
from .orthopoly import OrthoFamily
from .quadrature import QuadratureRule, gauss_legendre
from .roots import brent_root, scan_brackets
