"""orbifock: exact operator algebra on twisted Fock modules.

Realises the free bc-beta-gamma system and its cyclic-twisted modules as
explicit operator algebras over exact rationals, verifies the N=2
superconformal bracket relations and the BRST homotopy identity by
machine, and computes Chen-Ruan graded dimensions and the orbifold
elliptic genus of a global quotient by Atiyah-Bott localization.
"""

from .scalars import Rat, rat, Cyclotomic

__all__ = ["Rat", "rat", "Cyclotomic"]
__version__ = "0.1.0"
