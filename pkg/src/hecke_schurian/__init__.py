"""
Hecke Schurian - certificates of Schurian-infiniteness for blocks of
Iwahori-Hecke algebras of type A.

Layers:
- core: partitions, abacus displays, cores, quotients and Scopes classes
- algebra: Laurent polynomials, the Fock space, LLT columns, Jantzen
  coefficients and characteristic-p deductions
- certify: target matrices, reductions, case dispatch and sweeps

The command-line front end lives in :mod:`hecke_schurian.main`.
"""

__version__ = "0.1.0"
__author__ = "Hecke Schurian Team"
