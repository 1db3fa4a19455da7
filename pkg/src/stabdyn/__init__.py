"""stabdyn: computable invariants of lattice automorphisms acting on
stability-condition data.

Layout:

- lattice    exact integer linear algebra, spectral radius, Jordan growth
- cover      universal cover of GL+(2,R): lifts, powers, translation numbers
- stability  central charges, semistable data, compatible-triple checks
- growth     mass growth, shifting numbers, Hom-table entropy, inequality suite
- metric     orbit distances, quotient metric, stable translation length
- volume     pairing-based volume and its determinant transformation law
- families   random generators for verified test triples
- scenarios  end-to-end worked examples
- cli        JSON-in / JSON-out command line front end
"""

from . import (  # noqa: F401
    cover,
    families,
    growth,
    lattice,
    metric,
    scenarios,
    stability,
    volume,
)

__version__ = "0.1.0"
