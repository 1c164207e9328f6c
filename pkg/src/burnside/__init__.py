"""Exact-arithmetic toolkit for permutation groups containing a regular
abelian subgroup.

Subpackages:

* `cyclotomic`: formal sums of roots of unity with equality decided by
  divisibility by cyclotomic polynomials;
* `ramanujan`: divisor-indexed matrices of Ramanujan sums and their
  structural identities;
* `coprime`: divisor partitions from row sums and the exhaustive
  coprime-partition verifier;
* `permgroup`: generator-driven orbits, suborbits, block systems and the
  standard group constructions;
* `method`: suborbit cyclotomic sums, basis-set partitions and the
  imprimitive / 2-transitive diagnosis;
* `nullsets`: enumeration and classification of cyclotomic-sum solution
  sets over prime-power moduli;
* `cli`: the `burnside` command.
"""

from . import cli, coprime, cyclotomic, method, nullsets, permgroup, ramanujan

__all__ = [
    "cli",
    "coprime",
    "cyclotomic",
    "method",
    "nullsets",
    "permgroup",
    "ramanujan",
]

__version__ = "0.1.0"
