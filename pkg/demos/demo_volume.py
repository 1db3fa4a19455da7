"""Pairing-based volume and the determinant-one constraint.

For an odd-parity antisymmetric pairing the plane action scales the volume
by the inverse determinant of the matrix part.  A compatible action with
nonvanishing volume is therefore forced to have determinant one; actions
with other determinants can only verify on charges whose volume vanishes,
which the demo exhibits explicitly.
"""

import math

import numpy as np

from stabdyn import cover, families
from stabdyn.lattice import IntMatrix
from stabdyn.stability import (
    AutoequivalenceData,
    CentralCharge,
    SemistableDatum,
    StabilityData,
    verify_triple,
)
from stabdyn.volume import (
    EulerPairing,
    det_one_necessity,
    isotropy_defect,
    vol_transform_check,
    volume,
)

J2 = EulerPairing(chi=IntMatrix(((0, 1), (-1, 0))), cy_parity=3)
Z = CentralCharge(((1.0, 0.0), (0.0, 1.0)))
print("volume of the standard plane charge:", volume(Z, J2))
print("isotropy defect (must vanish):", isotropy_defect(Z, J2))

g = cover.from_complex(1j)  # matrix e^{-pi} Id, determinant e^{-2 pi}
rep = vol_transform_check(Z, J2, g)
print("scaling check: lhs %.6f rhs %.6f (ratio to e^{2pi}: %.6f)"
      % (rep.lhs, rep.rhs, rep.lhs / (math.exp(2 * math.pi) * volume(Z, J2))))

rng = np.random.default_rng(21)
worst = 0.0
for _ in range(50):
    chi = families.random_antisymmetric_pairing(rng, 4)
    pairing = EulerPairing(chi=chi, cy_parity=3)
    Zr = CentralCharge(tuple(map(tuple, rng.normal(size=(2, 4)).tolist())))
    if volume(Zr, pairing) < 1e-6:
        continue
    worst = max(worst, vol_transform_check(Zr, pairing, families.random_cover_element(rng)).relative_discrepancy)
print("worst relative gap of the transformation law over 50 random draws: %.2e" % worst)

# block pairing invariant under two stretch blocks
pairing4 = EulerPairing(
    chi=IntMatrix(((0, 0, 0, 1), (0, 0, -1, 0), (0, 1, 0, 0), (-1, 0, 0, 0))),
    cy_parity=3,
)
P = IntMatrix(((2, 1, 0, 0), (1, 1, 0, 0), (0, 0, 2, 1), (0, 0, 1, 1)))

# determinant-one action with positive volume: the constraint binds and holds
Zp = CentralCharge(((1.0, 0.0, 1.0, 0.0), (0.0, 1.0, 0.0, 1.0)))
sigma = StabilityData(
    Z=Zp,
    semistables=(
        SemistableDatum((1, 0, 0, 0), 0.0),
        SemistableDatum((0, 1, 0, 0), 0.5),
        SemistableDatum((1, 1, 1, 1), 0.25),
    ),
)
B = IntMatrix(((2, 1), (1, 1)))
g1 = cover.lift_from(B.to_float(), math.atan2(1.0, 2.0) / math.pi)
t1 = verify_triple(AutoequivalenceData(P=P), sigma, g1)
r1 = det_one_necessity(t1, pairing4)
print("\ndeterminant-one stretch: volume %.3f, constrained %s, passed %s"
      % (r1.volume, r1.constrained, r1.passed))

# eigen-ray charges admit the scalar action with determinant > 1;
# the trade-off is that their volume vanishes identically
lam = (3.0 + math.sqrt(5.0)) / 2.0
Ze = CentralCharge(((1.0, lam - 2.0, 0.0, 0.0), (0.0, 0.0, 1.0, lam - 2.0)))
sigma_e = StabilityData(
    Z=Ze,
    semistables=(SemistableDatum((1, 0, 0, 0), 0.0), SemistableDatum((0, 0, 1, 0), 0.5)),
)
g2 = cover.lift_from(np.diag([lam, lam]), 0.0)
t2 = verify_triple(AutoequivalenceData(P=P), sigma_e, g2)
r2 = det_one_necessity(t2, pairing4)
print("scalar action with det %.4f: verified %s, volume %.2e -> %s"
      % (lam * lam, t2.verified, r2.volume, r2.note))
