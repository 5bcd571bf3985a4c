"""telesum: exact telescoping toolkit for hypergeometric double sums.

Verifies telescoping certificates for double sums of bivariate hypergeometric
terms, reduces such sums to single boundary sums, searches for certificates by
linear-algebra ansatz, and sweeps a catalog of congruence, divisibility and
parity claims with exact arithmetic throughout.
"""

__version__ = "0.1.0"
