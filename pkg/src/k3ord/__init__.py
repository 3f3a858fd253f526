"""k3ord: exact-arithmetic toolkit for K3 Picard lattices, involution
extensions, cyclic group cohomology, divisor certificates, orders on
surfaces, and elliptic-fibration section groups.

All arithmetic is exact (arbitrary-precision integers and rationals);
no floating point is used anywhere in the package.
"""

__version__ = "0.1.0"
