"""Mass growth, shifting numbers and the inequality suite.

The headline behavior: for a verified spanning triple, the exponential rate
of the masses equals the log spectral radius of the 2x2 matrix part, which in
turn equals that of the lattice map; after removing the linear term, the
log n slope equals the Jordan growth rate.  The growth in the weight t is an
exact line whose slope is the translation number.
"""

import math

import numpy as np

from stabdyn import families
from stabdyn.growth import (
    HomTable,
    entropy_from_hom,
    epsilon_bounds_from_hom,
    linearity_check,
    mass_growth,
    pol_entropy_from_hom,
    pol_mass_growth,
    shifting_numbers,
    yomdin_suite,
)
from stabdyn.lattice import spectral_radius

rng = np.random.default_rng(5)

for kind in ("hyperbolic", "parabolic", "elliptic"):
    triple = families.compatible_triple(rng, rank=4, kind=kind, shift=1)
    seed = families.seed_object(triple)
    rep = mass_growth(triple, seed, n_max=2048)
    log_rho = math.log(spectral_radius(triple.auto.P))
    print("%s triple (rank 4, deck shift 1):" % kind)
    print("  mass growth rate: %.8f   lattice log-radius: %.8f" % (rep.exp_rate, log_rho))
    pol = pol_mass_growth(triple, seed, n_max=2**18)
    print("  polynomial rate: %.3f   (closed form %s)" % (pol.poly_rate, pol.closed_form))
    sh = shifting_numbers(triple, seed)
    print("  shifting numbers: upper %.6f lower %.6f translation %.6f"
          % (sh.nu_upper, sh.nu_lower, sh.translation))
    lin = linearity_check(triple, seed, n_max=2048)
    print("  growth line: %.4f + %.4f t, max deviation %.2e"
          % (lin.line_intercept, lin.line_slope, lin.max_deviation))
    suite = yomdin_suite(triple, seed, n_max=2048)
    print("  inequality suite: %d rows, all passed: %s"
          % (len(suite.rows), suite.all_passed))
    print()

# Hom-table estimators: sections of twists on the line grow like n + 1
table = HomTable({(n, 0): n + 1 for n in range(1, 4097)})
print("sections table, dimension n+1:")
for t in (-1.0, 0.0, 1.0):
    print("  entropy at t=%+.0f: %.2e" % (t, entropy_from_hom(table, t).exp_rate))
print("  polynomial entropy: %.3f" % pol_entropy_from_hom(table).poly_rate)

# extremal degrees drift linearly when the support moves
entries = {}
for n in range(1, 128):
    entries[(n, -n)] = 1
    entries[(n, 0)] = 1
eb = epsilon_bounds_from_hom(HomTable(entries))
print("\nsupport {-n, 0}: extremal-degree drifts upper %.3f lower %.3f"
      % (eb.nu_upper, eb.nu_lower))
