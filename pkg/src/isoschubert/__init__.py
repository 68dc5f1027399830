"""Schubert calculus of isotropic 2-plane Grassmannians in types B and C.

Structure constants come from divided-difference operators; the package
checks the identities around them (Pieri exponents, chain sums, generation
by special classes, double-coset bookkeeping) and assembles a certificate.
"""

__version__ = "0.1.0"
