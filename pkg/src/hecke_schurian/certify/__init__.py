"""
Certificates of Schurian-infiniteness.

Target matrices, row/column reductions, the case dispatch, the
characteristic-p evidence engine and sweeps over Scopes classes. Import the
submodules directly; this package keeps no eager imports so the algebra layer
can reach the target matrices without a cycle.
"""
