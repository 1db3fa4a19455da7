"""Exact and numerical linear algebra over a finite-rank integer lattice.

The exact layer (characteristic/minimal polynomials, square-free splitting,
determinants) runs on Python integers and fractions so nothing is rounded
before the final root extraction.  The numerical layer (root polishing,
Jordan chain ranks, norm-growth estimation) is plain numpy float64 with the
thresholds stated in the docstrings, so every test is reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._fit import geometric_schedule, joint_rate_fit, log_slope_fit
from .errors import DegenerateSpectrum, RootFindingDiverged

# Relative width of the top-modulus eigenvalue cluster (see poly_growth_rate).
DEFAULT_CLUSTER_TOL = 1e-7
# Singular values below this times the largest count as zero in rank chains.
DEFAULT_RANK_RTOL = 1e-8


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Square matrix with arbitrary-precision integer entries."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("entries must form a nonempty square matrix")
        object.__setattr__(self, "entries", rows)

    @property
    def dim(self):
        return len(self.entries)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    def transpose(self):
        return IntMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            b = other.entries
            return IntMatrix(
                tuple(
                    tuple(sum(ra[k] * b[k][j] for k in range(self.dim)) for j in range(self.dim))
                    for ra in self.entries
                )
            )
        return NotImplemented

    def apply(self, v):
        """Exact integer matrix-vector product."""
        v = [int(x) for x in v]
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        return tuple(sum(row[k] * v[k] for k in range(self.dim)) for row in self.entries)

    def power(self, k):
        if k < 0:
            raise ValueError("negative power of an integer matrix")
        result = IntMatrix.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def to_float(self):
        return np.array(self.entries, dtype=float)

    def to_json(self):
        return [list(row) for row in self.entries]


def det_exact(A):
    """Determinant of an IntMatrix by fraction-free Bareiss elimination."""
    n = A.dim
    m = [list(row) for row in A.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(P):
    """Exact inverse of a matrix with determinant +-1 (adjugate method)."""
    d = det_exact(P)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    n = P.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = [
                [P.entries[r][c] for c in range(n) if c != i]
                for r in range(n)
                if r != j
            ]
            if minor:
                mdet = det_exact(IntMatrix(tuple(tuple(r) for r in minor)))
            else:
                mdet = 1
            row.append(((-1) ** (i + j)) * mdet * d)
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# exact polynomial helpers (coefficients descending, index 0 = leading)


def _poly_trim(c):
    i = 0
    while i < len(c) - 1 and c[i] == 0:
        i += 1
    return list(c[i:])


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _poly_trim([Fraction(x) for x in b])
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = a[:]
    while len(r) >= len(b) and any(x != 0 for x in r):
        r = _poly_trim(r)
        if len(r) < len(b):
            break
        coeff = r[0] / b[0]
        shift = len(r) - len(b)
        q[len(q) - 1 - shift] = coeff
        for i in range(len(b)):
            r[i] -= coeff * b[i]
        r = r[1:] if r and r[0] == 0 else _poly_trim(r)
    return _poly_trim(q), _poly_trim(r) if r else [Fraction(0)]


def _poly_gcd(a, b):
    a = _poly_trim([Fraction(x) for x in a])
    b = _poly_trim([Fraction(x) for x in b])
    while len(b) > 1 or b[0] != 0:
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_trim(r)
    lead = a[0]
    return [x / lead for x in a]


def _poly_derivative(c):
    n = len(c) - 1
    if n == 0:
        return [Fraction(0)]
    return [c[i] * (n - i) for i in range(n)]


def _poly_to_int(c):
    """A monic rational polynomial that divides a monic integer one is integral."""
    out = []
    for x in c:
        f = Fraction(x)
        if f.denominator != 1:
            raise ArithmeticError("expected integer coefficients, got %s" % (f,))
        out.append(int(f))
    return out


def squarefree_decomposition(coeffs):
    """Yun decomposition p = prod f_i^i of a monic integer polynomial.

    Returns a list of (f_i coefficients, i) with every f_i monic integral.
    """
    p = [Fraction(c) for c in coeffs]
    dp = _poly_derivative(p)
    g = _poly_gcd(p, dp)
    if len(g) == 1:
        return [(_poly_to_int(p), 1)]
    w, _ = _poly_divmod(p, g)
    y, _ = _poly_divmod(dp, g)
    out = []
    i = 1
    while len(w) > 1:
        z = [a - b for a, b in zip_pad(y, _poly_derivative(w))]
        z = _poly_trim(z)
        f = _poly_gcd(w, z)  # gcd(w, 0) = w handles the final factor
        if len(f) > 1:
            out.append((_poly_to_int(f), i))
        w, _ = _poly_divmod(w, f)
        y, _ = _poly_divmod(z, f)
        i += 1
    return out


def zip_pad(a, b):
    """Align two descending coefficient lists at the constant term."""
    la, lb = len(a), len(b)
    n = max(la, lb)
    a = [Fraction(0)] * (n - la) + list(a)
    b = [Fraction(0)] * (n - lb) + list(b)
    return zip(a, b)


def _poly_eval(coeffs, x):
    acc = 0.0 + 0.0j if isinstance(x, complex) else 0.0
    for c in coeffs:
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials


def char_poly(A):
    """Monic characteristic polynomial by the Faddeev-LeVerrier recursion.

    Exact over the integers; every division in the recursion is exact.
    Coefficients are returned descending (leading 1 first).
    """
    n = A.dim
    coeffs = [0] * (n + 1)
    coeffs[0] = 1
    M = A
    trace = sum(M.entries[i][i] for i in range(n))
    coeffs[1] = -trace
    for k in range(2, n + 1):
        shifted = IntMatrix(
            tuple(
                tuple(M.entries[i][j] + (coeffs[k - 1] if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )
        M = A @ shifted
        trace = sum(M.entries[i][i] for i in range(n))
        q, r = divmod(-trace, k)
        if r != 0:
            raise ArithmeticError("Faddeev-LeVerrier division was not exact")
        coeffs[k] = q
    return coeffs


def min_poly(A):
    """Exact monic minimal polynomial via first linear dependence of powers.

    Gaussian elimination over the rationals on vectorized powers I, A, A^2, ...
    The result divides char_poly(A) in Z[x], so coefficients are integers.
    Returns (coefficients descending, used_char_poly=False).
    """
    n = A.dim
    powers = [IntMatrix.identity(n)]
    vecs = []

    def vec(M):
        return [Fraction(x) for row in M.entries for x in row]

    # rows of the eliminated basis: (pivot index, reduced vector, combo over powers)
    basis = []
    k = 0
    while True:
        M = powers[-1]
        v = vec(M)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for pivot, bvec, bcombo in basis:
            factor = v[pivot]
            if factor != 0:
                v = [x - factor * y for x, y in zip(v, bvec)]
                combo = [x - factor * y for x, y in zip_pad_frac(combo, bcombo)]
        pivot = next((i for i, x in enumerate(v) if x != 0), None)
        if pivot is None:
            lead = combo[-1] if len(combo) == k + 1 else Fraction(0)
            if lead == 0:
                raise ArithmeticError("dependence does not involve the top power")
            monic = [c / lead for c in combo]
            coeffs = list(reversed(monic))  # descending in the power of x
            return _poly_to_int(coeffs), False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        combo = [x * inv for x in combo]
        basis.append((pivot, v, combo))
        vecs.append(v)
        powers.append(powers[-1] @ A)
        k += 1
        if k > n:
            raise ArithmeticError("no dependence found below dimension bound")


def zip_pad_frac(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


# ---------------------------------------------------------------------------
# eigenvalues and Jordan structure


def _certified_roots(coeffs, tol):
    """Roots of a monic integer polynomial with per-root residual bounds.

    Square-free factors are split off exactly first, so repeated eigenvalues
    never degrade the root accuracy of the simple ones.  Returns a list of
    (root, multiplicity, residual).
    """
    out = []
    norm = max(abs(c) for c in coeffs)
    deg_total = len(coeffs) - 1
    for factor, mult in squarefree_decomposition(coeffs):
        roots = np.roots(np.array(factor, dtype=float))
        dfactor = [c * (len(factor) - 1 - i) for i, c in enumerate(factor[:-1])]
        for r in roots:
            z = complex(r)
            for _ in range(3):
                pv = _poly_eval(factor, z)
                dv = _poly_eval(dfactor, z)
                if abs(dv) < 1e-300:
                    break
                z -= pv / dv
            if abs(z.imag) < 1e-12 * max(1.0, abs(z.real)):
                z = complex(z.real, 0.0)
            pv = abs(_poly_eval(coeffs, z))
            scale = norm * max(1.0, abs(z)) ** deg_total
            residual = pv / scale
            if residual > tol:
                raise RootFindingDiverged(
                    "root residual %.3e above tolerance %.3e" % (residual, tol)
                )
            out.append((z, mult, residual))
    return out


def _rank(M, rtol):
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > rtol * sv[0]))


def _jordan_blocks(A_float, lam, mult, rtol):
    """Block sizes of the eigenvalue lam from ranks of (A - lam I)^k."""
    n = A_float.shape[0]
    B = A_float.astype(complex) - lam * np.eye(n)
    ranks = [n]
    P = np.eye(n, dtype=complex)
    for _ in range(mult):
        P = P @ B
        ranks.append(_rank(P, rtol))
    counts = []
    for k in range(1, mult + 1):
        geq_k = ranks[k - 1] - ranks[k]
        geq_k1 = ranks[k] - ranks[k + 1] if k + 1 < len(ranks) else 0
        counts.append(geq_k - geq_k1)
    sizes = []
    for size, cnt in enumerate(counts, start=1):
        sizes.extend([size] * max(0, cnt))
    if sum(sizes) != mult:
        # rank thresholds disagreed with the exact multiplicity
        raise DegenerateSpectrum(
            "Jordan chain ranks inconsistent with multiplicity %d at %s" % (mult, lam)
        )
    return sorted(sizes, reverse=True)


@dataclass(frozen=True)
class EigenvalueData:
    value: complex
    multiplicity: int
    residual: float
    block_sizes: tuple


@dataclass(frozen=True)
class SpectralData:
    """Exact characteristic polynomial plus certified spectral structure."""

    char_poly: tuple
    eigenvalues: tuple  # of EigenvalueData
    rho: float
    s: int

    def to_json(self):
        return {
            "char_poly": [str(c) for c in self.char_poly],
            "eigenvalues": [
                {
                    "re": ev.value.real,
                    "im": ev.value.imag,
                    "multiplicity": ev.multiplicity,
                    "residual": ev.residual,
                    "block_sizes": list(ev.block_sizes),
                }
                for ev in self.eigenvalues
            ],
            "rho": self.rho,
            "s": self.s,
        }


def _top_cluster(eigs, cluster_tol):
    """Eigenvalues with |lambda| within cluster_tol*rho of rho.

    Raises DegenerateSpectrum when some modulus falls in the guard band
    (cluster_tol, 10*cluster_tol] * rho below rho, i.e. is neither clearly
    on the top circle nor clearly below it.
    """
    moduli = sorted({abs(ev.value) for ev in eigs}, reverse=True)
    rho = moduli[0]
    if rho == 0.0:
        return [], 0.0
    top = [ev for ev in eigs if rho - abs(ev.value) <= cluster_tol * rho]
    for m in moduli[1:]:
        gap = rho - m
        if cluster_tol * rho < gap <= 10 * cluster_tol * rho:
            raise DegenerateSpectrum(
                "moduli %.17g and %.17g are too close to separate at relative "
                "tolerance %.1e" % (rho, m, cluster_tol),
                moduli=(rho, m),
            )
    return top, rho


def spectral_data(A, tol=1e-9, cluster_tol=DEFAULT_CLUSTER_TOL, rank_rtol=DEFAULT_RANK_RTOL):
    """Full spectral record of an integer matrix.

    tol certifies root residuals; cluster_tol (relative) delimits the
    top-modulus class; rank_rtol is the singular-value cutoff for the
    Jordan chain ranks.
    """
    coeffs = char_poly(A)
    roots = _certified_roots(coeffs, tol)
    Af = A.to_float()
    eigs = []
    for z, mult, residual in roots:
        if mult == 1:
            blocks = (1,)
        else:
            blocks = tuple(_jordan_blocks(Af, z, mult, rank_rtol))
        eigs.append(EigenvalueData(z, mult, residual, blocks))
    eigs_sorted = tuple(sorted(eigs, key=lambda e: (-abs(e.value), e.value.real, e.value.imag)))
    rho = max(abs(e.value) for e in eigs_sorted)
    if rho > 0.0:
        top, rho = _top_cluster(eigs_sorted, cluster_tol)
        s = max(max(e.block_sizes) for e in top) - 1
    else:
        s = 0
    return SpectralData(tuple(coeffs), eigs_sorted, float(rho), int(s))


def spectral_radius(A, tol=1e-9):
    """Largest eigenvalue modulus, each root certified to residual <= tol."""
    coeffs = char_poly(A)
    roots = _certified_roots(coeffs, tol)
    return float(max(abs(z) for z, _, _ in roots))


def poly_growth_rate(A, tol=1e-9, cluster_tol=DEFAULT_CLUSTER_TOL, rank_rtol=DEFAULT_RANK_RTOL):
    """One less than the longest Jordan chain among top-modulus eigenvalues."""
    data = spectral_data(A, tol=tol, cluster_tol=cluster_tol, rank_rtol=rank_rtol)
    if data.rho == 0.0:
        raise ValueError("polynomial growth rate requires a positive spectral radius")
    return data.s


# ---------------------------------------------------------------------------
# norm-growth estimation (the defining limits, used as an independent oracle)


def _renormalized_squares(A_float, max_bit):
    """[(A^(2^j) / scale_j, log scale_j)] for j = 0..max_bit."""
    out = []
    M = A_float.copy()
    logscale = 0.0
    for _ in range(max_bit + 1):
        out.append((M.copy(), logscale))
        M = M @ M
        logscale *= 2.0
        s = np.max(np.abs(M))
        if s == 0.0:
            out.extend([(M.copy(), -np.inf)] * (max_bit + 1 - len(out)))
            break
        M /= s
        logscale += float(np.log(s))
    return out


def log_norm_of_power(A_float, n, squares=None):
    """log of the Frobenius norm of A^n, via renormalized repeated squaring."""
    if n == 0:
        return 0.5 * float(np.log(A_float.shape[0]))
    if squares is None:
        squares = _renormalized_squares(A_float, int(n).bit_length() - 1)
    M = None
    logscale = 0.0
    bit = 0
    k = n
    while k:
        if k & 1:
            Mj, lj = squares[bit]
            if M is None:
                M, logscale = Mj.copy(), lj
            else:
                M = M @ Mj
                logscale += lj
                s = np.max(np.abs(M))
                if s == 0.0:
                    return -np.inf
                M /= s
                logscale += float(np.log(s))
        bit += 1
        k >>= 1
    norm = float(np.linalg.norm(M))
    if norm == 0.0:
        return -np.inf
    return logscale + float(np.log(norm))


@dataclass(frozen=True)
class GrowthEstimate:
    rho_est: float
    s_est: float
    residual: float
    window: tuple
    samples: tuple

    def to_json(self):
        return {
            "rho_est": self.rho_est,
            "s_est": self.s_est,
            "residual": self.residual,
            "window": list(self.window),
            "samples": [[int(n), v] for n, v in self.samples],
        }


def growth_rate_estimate(A, schedule=None):
    """Fit rho and the polynomial rate from log||A^n|| along a schedule.

    rho_est is exp of the n-slope of log||A^n|| (a log n regressor is carried
    so Jordan growth does not bias it); s_est is the log n slope of the
    remainder after removing n*log rho_est.
    """
    if schedule is None:
        # several points per octave so bounded norm oscillation (complex
        # eigenvalue pairs) averages out of the slope fit
        schedule = geometric_schedule(2**20, points_per_octave=6)
    schedule = [int(n) for n in schedule]
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be strictly increasing")
    Af = A.to_float()
    squares = _renormalized_squares(Af, max(int(n).bit_length() for n in schedule))
    ys = [log_norm_of_power(Af, n, squares) for n in schedule]
    a, _, _, rms, window = joint_rate_fit(schedule, ys, fraction=64)
    remainder = [y - a * n for n, y in zip(schedule, ys)]
    s_est, _, _ = log_slope_fit(schedule, remainder)
    return GrowthEstimate(
        rho_est=float(np.exp(a)),
        s_est=float(s_est),
        residual=rms,
        window=window,
        samples=tuple(zip(schedule, ys)),
    )


# ---------------------------------------------------------------------------
# minimal-polynomial root transfer


@dataclass(frozen=True)
class MinPolyTransfer:
    vanishes: bool
    residual: float
    used_char_poly: bool

    def __bool__(self):
        return self.vanishes


def min_poly_root_transfer(A, M, tol=1e-9):
    """Whether mu_A(M) = 0 within tol, so every eigenvalue of M is one of A.

    mu_A is the exact minimal polynomial; if its computation fails the exact
    characteristic polynomial is substituted and flagged (the divides
    relation is preserved, only sharpness is lost).
    """
    try:
        coeffs, used_char = min_poly(A)
    except ArithmeticError:
        coeffs, used_char = char_poly(A), True
    M = np.asarray(M, dtype=float)
    acc = np.zeros_like(M)
    for c in coeffs:
        acc = acc @ M + c * np.eye(M.shape[0])
    norm_m = float(np.linalg.norm(M, 2))
    scale = 1.0 + sum(abs(c) * max(1.0, norm_m) ** (len(coeffs) - 1 - i) for i, c in enumerate(coeffs))
    residual = float(np.max(np.abs(acc))) / scale
    return MinPolyTransfer(vanishes=residual <= tol, residual=residual, used_char_poly=used_char)


__all__ = [
    "IntMatrix",
    "SpectralData",
    "EigenvalueData",
    "GrowthEstimate",
    "MinPolyTransfer",
    "char_poly",
    "min_poly",
    "det_exact",
    "inverse_unimodular",
    "squarefree_decomposition",
    "spectral_data",
    "spectral_radius",
    "poly_growth_rate",
    "growth_rate_estimate",
    "log_norm_of_power",
    "min_poly_root_transfer",
    "geometric_schedule",
]
