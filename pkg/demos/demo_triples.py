"""Verifying compatibility of (lattice map, stability datum, cover element).

Compatibility is decided on finite data: the charge intertwine, phase
transport of each listed semistable, and the heart-window criterion.  The
rank-two spherical-twist data shows the intertwine alone is not enough.
"""

import cmath
import math

import numpy as np

from stabdyn import cover
from stabdyn.lattice import IntMatrix
from stabdyn.stability import (
    AutoequivalenceData,
    CentralCharge,
    HNObject,
    SemistableDatum,
    StabilityData,
    apply_auto,
    ginzburg_infeasibility,
    mass,
    verify_triple,
)

# the rank/degree lattice of a curve with charge -deg + i rk
Z = CentralCharge(((0.0, -1.0), (1.0, 0.0)))
sigma = StabilityData(
    Z=Z,
    semistables=(
        SemistableDatum((1, 0), 0.5),   # structure sheaf ray
        SemistableDatum((0, 1), 1.0),   # point ray
        SemistableDatum((1, 1), math.atan2(1.0, -1.0) / math.pi),
    ),
    support_C=2.0,
)

# tensoring by a degree-3 line bundle: shear on classes, shear on charges
deg = 3
auto = AutoequivalenceData(P=IntMatrix(((1, 0), (deg, 1))), label="tensor by degree 3")
g = cover.lift_from(np.array([[1.0, -float(deg)], [0.0, 1.0]]), 0.0)
triple = verify_triple(auto, sigma, g)
print("curve tensor triple verified:", triple.verified, "spanning:", triple.spanning)
for src, img in zip(sigma.semistables, triple.images):
    print("  %s phase %.4f  ->  %s phase %.4f" % (src.v, src.phase, img.v, img.phase))

E = HNObject((SemistableDatum((0, 1), 1.0), SemistableDatum((1, 0), 0.5)))
print("object mass before: %.6f  after: %.6f" % (mass(E, Z), mass(apply_auto(E, triple), Z)))

# the twist data on the two-simple lattice: intertwine passes, window fails
p1, p2, d = 0.3, 0.6, 3
z1 = cmath.exp(1j * math.pi * p1)
z2 = cmath.exp(1j * math.pi * p2)
Zq = CentralCharge(((z1.real, z2.real), (z1.imag, z2.imag)))
sigma_q = StabilityData(
    Z=Zq,
    semistables=(SemistableDatum((1, 0), p1), SemistableDatum((0, 1), p2)),
)
twist = AutoequivalenceData(P=IntMatrix(((1, 1), (0, 1))), label="spherical twist")
B = np.array([[z1.real, z2.real], [z1.imag, z2.imag]])
Bp = np.array([[z1.real, z1.real + z2.real], [z1.imag, z1.imag + z2.imag]])
M = Bp @ np.linalg.inv(B)
gq = cover.lift_from(M, math.atan2(M[1, 0], M[0, 0]) / math.pi)
z12 = z1 + z2
images = (
    SemistableDatum((1, 0), p1 + 1 - d),  # the first simple drops d-1 phase units
    SemistableDatum((1, 1), math.atan2(z12.imag, z12.real) / math.pi),
)
bad = verify_triple(twist, sigma_q, gq, images=images)
print("\ntwist triple verified:", bad.verified)
print("  intertwine residual: %.2e" % bad.intertwine.residual)
print("  failure:", bad.failure.kind, "-", bad.failure.detail)

cert = ginzburg_infeasibility(z1, z2, d)
print("  window gap: %d, image phases %.3f and %.3f are %.3f apart"
      % (cert.gap, cert.image_phase_1, cert.image_phase_2, cert.spread))
print("  no window: need psi < %.3f and psi >= %.3f"
      % (cert.psi_must_be_below, cert.psi_must_be_at_least))
