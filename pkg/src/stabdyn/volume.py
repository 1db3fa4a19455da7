"""Pairing-based volume of a stability datum and its transformation law.

The volume is |sum chi^{ij} Z(v_i) conj(Z(v_j))| over the standard lattice
basis, with chi^{ij} the exact rational inverse of the integer pairing.  For
an odd-parity antisymmetric pairing the plane action scales the volume by
the inverse determinant of the matrix part, which forces det = 1 for any
compatible action with nonvanishing volume.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NotOddCY, SingularPairing
from .lattice import IntMatrix
from .stability import CentralCharge


@dataclass(frozen=True)
class EulerPairing:
    """Integer pairing matrix, optionally carrying an odd parity.

    An odd parity asserts antisymmetry chi(v, w) = -chi(w, v), which is
    validated exactly.
    """

    chi: IntMatrix
    cy_parity: object = None  # odd integer or None

    def __post_init__(self):
        if self.cy_parity is not None:
            d = int(self.cy_parity)
            if d % 2 == 0:
                raise NotOddCY("parity must be odd")
            for i in range(self.chi.dim):
                for j in range(self.chi.dim):
                    if self.chi.entries[i][j] != -self.chi.entries[j][i]:
                        raise NotOddCY("pairing is not antisymmetric")

    @property
    def rank(self):
        return self.chi.dim

    def to_json(self):
        out = {"chi": self.chi.to_json()}
        if self.cy_parity is not None:
            out["cy_parity"] = int(self.cy_parity)
        return out


def _rational_inverse(A):
    """Exact inverse of an integer matrix by Fraction Gauss-Jordan."""
    n = A.dim
    m = [[Fraction(A.entries[i][j]) for j in range(n)] for i in range(n)]
    inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise SingularPairing("pairing matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = m[col][col]
        m[col] = [x / scale for x in m[col]]
        inv[col] = [x / scale for x in inv[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def _charges(Z):
    return [complex(Z.matrix[0][j], Z.matrix[1][j]) for j in range(Z.rank)]


def _pairing_sum(Z, chi_inv, conjugate_second=True):
    zs = _charges(Z)
    total = 0j
    for i, zi in enumerate(zs):
        for j, zj in enumerate(zs):
            w = zj.conjugate() if conjugate_second else zj
            total += float(chi_inv[i][j]) * zi * w
    return total


def volume(Z, pairing):
    """|sum chi^{ij} Z(v_i) conj(Z(v_j))| over the standard basis."""
    if Z.rank != pairing.rank:
        raise SingularPairing("pairing size does not match the charge rank")
    chi_inv = _rational_inverse(pairing.chi)
    return float(abs(_pairing_sum(Z, chi_inv, conjugate_second=True)))


def isotropy_defect(Z, pairing):
    """|sum chi^{ij} Z(v_i) Z(v_j)| without conjugation.

    Vanishes identically for an antisymmetric pairing; kept as a cheap
    self-check of the sign conventions.
    """
    chi_inv = _rational_inverse(pairing.chi)
    return float(abs(_pairing_sum(Z, chi_inv, conjugate_second=False)))


def charge_conjugation_split(Minv):
    """(alpha, beta) with M^{-1} w = alpha w + beta conj(w) on the plane.

    Convention: for M^{-1} = [[a, b], [c, d]], alpha = (a+d+i(-b+c))/2 and
    beta = (a-d+i(b+c))/2; any other identification of the plane with the
    complex line breaks the sign tests.
    """
    a, b = float(Minv[0][0]), float(Minv[0][1])
    c, d = float(Minv[1][0]), float(Minv[1][1])
    alpha = complex(a + d, -b + c) / 2.0
    beta = complex(a - d, b + c) / 2.0
    return alpha, beta


@dataclass(frozen=True)
class VolumeTransformReport:
    lhs: float
    rhs: float
    relative_discrepancy: float
    passed: bool

    def to_json(self):
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "relative_discrepancy": self.relative_discrepancy,
            "passed": self.passed,
        }


def vol_transform_check(Z, pairing, g, tol=1e-10):
    """Check volume(g-translate) = det(M^{-1}) volume against each other."""
    if pairing.cy_parity is None:
        raise NotOddCY("transformation law needs an odd-parity pairing")
    M = np.asarray(g.m, dtype=float)
    Minv = np.linalg.inv(M)
    Znew = CentralCharge(tuple(map(tuple, (Minv @ Z.array).tolist())))
    lhs = volume(Znew, pairing)
    rhs = float(np.linalg.det(Minv)) * volume(Z, pairing)
    scale = max(abs(rhs), abs(lhs), 1e-300)
    rel = abs(lhs - rhs) / scale
    return VolumeTransformReport(
        lhs=lhs, rhs=rhs, relative_discrepancy=float(rel), passed=bool(rel <= tol)
    )


@dataclass(frozen=True)
class DetOneReport:
    volume: float
    det: float
    constrained: bool
    passed: bool
    note: str

    def to_json(self):
        return {
            "volume": self.volume,
            "det": self.det,
            "constrained": self.constrained,
            "passed": self.passed,
            "note": self.note,
        }


def det_one_necessity(triple, pairing, tol=1e-9):
    """Nonvanishing volume forces determinant one for a compatible action."""
    triple.require_verified()
    if pairing.cy_parity is None:
        raise NotOddCY("the necessity statement needs an odd-parity pairing")
    vol = volume(triple.sigma.Z, pairing)
    det = float(np.linalg.det(np.asarray(triple.g.m, dtype=float)))
    if vol <= tol:
        return DetOneReport(
            volume=vol,
            det=det,
            constrained=False,
            passed=True,
            note="no constraint (volume vanishes)",
        )
    ok = abs(det - 1.0) <= tol
    return DetOneReport(
        volume=vol,
        det=det,
        constrained=True,
        passed=bool(ok),
        note="det must equal 1" if ok else "contradiction: det != 1 with positive volume",
    )


__all__ = [
    "EulerPairing",
    "VolumeTransformReport",
    "DetOneReport",
    "volume",
    "isotropy_defect",
    "charge_conjugation_split",
    "vol_transform_check",
    "det_one_necessity",
]
