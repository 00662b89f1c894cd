"""Rational Schwarzian derivatives for one-tooth gear mappings.

A conformal map of the unit disk onto a circular quadrilateral with interior
angles (pi/2, 3pi/2, 3pi/2, pi/2) at prevertices e^{i t1}, e^{i t2},
e^{-i t2}, e^{-i t1} has Schwarzian derivative

    (1/2) R(z) = psi0(z) - lambda * psi1(z),

    psi1(z) = 4 (cos t2 - cos t1) / (P1(z) P2(z)),
    psi0(z) = (c4 z^4 + c3 z^3 + c2 z^2 + c3 z + c4) / (P1(z) P2(z))^2,

with P_j(z) = z^2 - 2 cos(t_j) z + 1 and real coefficients c_k depending on
(t1, t2) only.  The free real parameter lambda is the accessory parameter.
This module builds, evaluates and transforms these rational functions, and
provides the exact lambda interval on which they are Schwarzians of gear
mappings, together with the coarser Nehari band.

Prevertices symmetric about the imaginary axis (t1 = t, t2 = pi - t) give the
reduced one-parameter family R_{t,lambda}; ``pullback`` moves between the
general and reduced pictures through a disk automorphism T_q.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .geometry import DiskAutomorphism, symmetrize_prevertices

# Evaluation refuses points closer to a pole than this.
POLE_PROXIMITY_TOL = 1e-12

# Note on conventions: the symmetric subscript satisfies t2 = pi - t, which is
# what makes the reduced denominator z^4 - 2 cos(2t) z^2 + 1 factor with roots
# +-e^{+-i t}.  An alternative reading "t2 = pi/2 - t" circulates in the
# source material; it is inconsistent with those roots and is rejected here.
# Both readings are reported in ``convention_notes`` for downstream tooling.
SYMMETRIC_SUBSCRIPT_CONVENTION = "t2 = pi - t"
REJECTED_SUBSCRIPT_READING = "t2 = pi/2 - t (inconsistent with denominator roots +-e^{+-it})"


def convention_notes() -> dict:
    """Diagnostic record of the subscript convention adopted for R_{t,lambda}."""
    return {
        "symmetric_subscript": SYMMETRIC_SUBSCRIPT_CONVENTION,
        "rejected_reading": REJECTED_SUBSCRIPT_READING,
    }


class PoleProximityError(ValueError):
    """Evaluation requested too close to a pole of the rational function."""


@dataclass(frozen=True)
class PreverticesPair:
    """Prevertex angles 0 < t1 < t2 < pi (radians)."""

    t1: float
    t2: float

    def __post_init__(self):
        if not (0.0 < self.t1 < self.t2 < math.pi):
            raise ValueError(f"need 0 < t1 < t2 < pi, got ({self.t1}, {self.t2})")


@dataclass(frozen=True)
class SymmetricParams:
    """Reduced parameters: prevertex half-angle 0 < t < pi/2 and accessory lambda."""

    t: float
    lam: float

    def __post_init__(self):
        if not (0.0 < self.t < 0.5 * math.pi):
            raise ValueError(f"need 0 < t < pi/2, got t={self.t}")
        if not math.isfinite(self.lam):
            raise ValueError("lambda must be finite")


def _poly_eval(coeffs, z):
    """Horner evaluation; coeffs in ascending order."""
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def _poly_derivative(coeffs):
    return tuple(k * coeffs[k] for k in range(1, len(coeffs)))


@dataclass(frozen=True)
class RationalSchwarzian:
    """Coefficient form of R(z) = 2 psi0(z) - 2 lambda psi1(z).

    ``den`` holds the ascending real coefficients of P1 P2 (the psi1
    denominator); psi0's denominator is its square.  ``psi1_num`` is the
    constant numerator of psi1 and ``psi0_num`` the ascending numerator
    coefficients of psi0.  All coefficients are real, so R(conj z) = conj R(z).
    """

    psi0_num: tuple
    psi1_num: float
    den: tuple
    lam: float
    t1: float
    t2: float
    poles: tuple

    @property
    def is_symmetric(self) -> bool:
        return abs(self.t1 + self.t2 - math.pi) < 1e-14

    def _check_pole(self, z):
        for p in self.poles:
            if abs(z - p) < POLE_PROXIMITY_TOL:
                raise PoleProximityError(f"z={z} within {POLE_PROXIMITY_TOL} of pole {p}")

    def psi0(self, z: complex) -> complex:
        self._check_pole(z)
        d = _poly_eval(self.den, z)
        return _poly_eval(self.psi0_num, z) / (d * d)

    def psi1(self, z: complex) -> complex:
        self._check_pole(z)
        return self.psi1_num / _poly_eval(self.den, z)

    def __call__(self, z: complex) -> complex:
        self._check_pole(z)
        d = _poly_eval(self.den, z)
        n0 = _poly_eval(self.psi0_num, z)
        return 2.0 * n0 / (d * d) - 2.0 * self.lam * self.psi1_num / d

    def eval_with_derivatives(self, z: complex):
        """Return (R(z), R'(z), R''(z)) by direct rational evaluation."""
        self._check_pole(z)
        dp = _poly_derivative(self.den)
        dpp = _poly_derivative(dp)
        D = _poly_eval(self.den, z)
        D1 = _poly_eval(dp, z)
        D2 = _poly_eval(dpp, z)
        n0p = _poly_derivative(self.psi0_num)
        n0pp = _poly_derivative(n0p)
        N = _poly_eval(self.psi0_num, z)
        N1 = _poly_eval(n0p, z)
        N2 = _poly_eval(n0pp, z)
        m = self.psi1_num

        r = 2.0 * N / (D * D) - 2.0 * self.lam * m / D
        # d/dz [N / D^2] = (N' D - 2 N D') / D^3
        A = N1 * D - 2.0 * N * D1
        rp = 2.0 * A / D**3 + 2.0 * self.lam * m * D1 / (D * D)
        # d/dz [A / D^3] = (A' D - 3 A D') / D^4 with A' = N'' D - N' D' - 2 N D''
        A1 = N2 * D - N1 * D1 - 2.0 * N * D2
        rpp = (2.0 * (A1 * D - 3.0 * A * D1) / D**4
               + 2.0 * self.lam * m * (D2 * D - 2.0 * D1 * D1) / D**3)
        return r, rp, rpp

    def accessory_residues(self) -> tuple[float, float]:
        """The residue parameters (r1, r2) of the four-prevertex partial
        fraction form, exposed only after a consistency check.

        The bridge formulas are

            r1 = (3 cos t1 - 16 lambda) / (16 sin t1),
            r2 = (16 lambda - 5 cos t2) / (16 sin t2);

        the partial-fraction expansion they generate is re-evaluated against
        the coefficient form at interior check points and must agree to
        1e-10 before the values are returned.
        """
        t1, t2, lam = self.t1, self.t2, self.lam
        r1 = (3.0 * math.cos(t1) - 16.0 * lam) / (16.0 * math.sin(t1))
        r2 = (16.0 * lam - 5.0 * math.cos(t2)) / (16.0 * math.sin(t2))
        for z in (0.23 + 0.11j, -0.31 + 0.27j, 0.05 - 0.42j):
            direct = self(z)
            expanded = _four_prevertex_form(t1, t2, r1, r2, z)
            if abs(direct - expanded) > 1e-10 * max(1.0, abs(direct)):
                raise ArithmeticError(
                    "residue bridge formulas inconsistent with coefficient form")
        return r1, r2


def _four_prevertex_form(t1, t2, r1, r2, z):
    """General circular-quadrilateral Schwarzian with angle factors
    a = 3/8 at e^{+-i t1} and a = -5/8 at e^{+-i t2}."""
    def term(a, rk, zk):
        return a * zk * z / (z - zk) ** 2 + 1j * rk * (z + zk) / (z - zk)

    z1, z2 = cmath.exp(1j * t1), cmath.exp(1j * t2)
    tot = (term(0.375, r1, z1) + term(0.375, -r1, z1.conjugate())
           + term(-0.625, r2, z2) + term(-0.625, -r2, z2.conjugate()))
    return tot / (z * z)


def build_general(p: PreverticesPair, lam: float) -> RationalSchwarzian:
    """R for prevertices (e^{+-i t1}, e^{+-i t2}) and accessory parameter lambda."""
    t1, t2 = p.t1, p.t2
    c1, c2 = math.cos(t1), math.cos(t2)
    c00 = (3.0 * math.cos(2 * t1) - 5.0 * math.cos(2 * t2) + 2.0) / 8.0
    c10 = 3.0 * math.sin(t1) ** 2 * c2 - 5.0 * c1 * math.sin(t2) ** 2
    c20 = (math.cos(2 * t1) * (11.0 - 2.0 * math.cos(2 * t2))
           - 13.0 * math.cos(2 * t2) + 4.0) / 4.0
    # (z^2 - 2 c1 z + 1)(z^2 - 2 c2 z + 1), ascending
    den = (1.0, -2.0 * (c1 + c2), 2.0 + 4.0 * c1 * c2, -2.0 * (c1 + c2), 1.0)
    poles = (cmath.exp(1j * t1), cmath.exp(-1j * t1),
             cmath.exp(1j * t2), cmath.exp(-1j * t2))
    return RationalSchwarzian(
        psi0_num=(c00, c10, c20, c10, c00),
        psi1_num=4.0 * (c2 - c1),
        den=den, lam=float(lam), t1=t1, t2=t2, poles=poles)


def build_symmetric(s: SymmetricParams) -> RationalSchwarzian:
    """Reduced form R_{t,lambda}:

        psi1(z) = -8 cos t / (z^4 - 2 cos(2t) z^2 + 1),
        psi0(z) = sin^2 t (z^4 - 16 cos t z^3 + (4 + 2 cos 2t) z^2
                   - 16 cos t z + 1) / (2 (z^4 - 2 cos(2t) z^2 + 1)^2).
    """
    t, lam = s.t, s.lam
    c = math.cos(t)
    s2 = math.sin(t) ** 2
    c2t = math.cos(2 * t)
    psi0_num = (0.5 * s2, -8.0 * s2 * c, 0.5 * s2 * (4.0 + 2.0 * c2t),
                -8.0 * s2 * c, 0.5 * s2)
    den = (1.0, 0.0, -2.0 * c2t, 0.0, 1.0)
    poles = (cmath.exp(1j * t), cmath.exp(-1j * t),
             -cmath.exp(1j * t), -cmath.exp(-1j * t))
    return RationalSchwarzian(
        psi0_num=psi0_num, psi1_num=-8.0 * c, den=den,
        lam=float(lam), t1=t, t2=math.pi - t, poles=poles)


def pullback(r: RationalSchwarzian, q: float) -> RationalSchwarzian:
    """Reduced form of r under the disk automorphism T_q.

    With q from ``symmetrize_prevertices(t1, t2)`` the result R* satisfies the
    pointwise identity  r(z) = R*(T_q(z)) * T_q'(z)^2  with the accessory
    parameter unchanged.
    """
    if q == 0.0:
        if r.is_symmetric:
            return r
        q_check, t = symmetrize_prevertices(r.t1, r.t2)
        return build_symmetric(SymmetricParams(t, r.lam))
    aut = DiskAutomorphism(q)
    w1 = aut.apply(cmath.exp(1j * r.t1))
    t = math.atan2(w1.imag, w1.real)
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"pullback did not symmetrize: t={t}; "
                         "was q computed by symmetrize_prevertices?")
    return build_symmetric(SymmetricParams(t, r.lam))


def lambda_bounds(t: float) -> tuple[float, float]:
    """Exact endpoints (lambda_minus, lambda_plus) of the gearlike interval:

        lambda_t^-+ = -+1/4 - (cos t + 1/cos t) / 16.

    The width lambda_plus - lambda_minus is exactly 1/2 for every t.
    """
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"need 0 < t < pi/2, got {t}")
    c = math.cos(t)
    shift = (c + 1.0 / c) / 16.0
    return (-0.25 - shift, 0.25 - shift)


def nehari_bounds(t: float) -> tuple[float, float]:
    """Necessary-condition band from the Nehari univalence criterion applied
    at z = 0, where |R(0)| = |16 lambda cos t + sin^2 t| must not exceed 6:

        lower = -(13 - cos 2t) / (32 cos t),  upper = (11 + cos 2t) / (32 cos t).

    The band strictly contains the exact interval of ``lambda_bounds``.
    """
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"need 0 < t < pi/2, got {t}")
    c = math.cos(t)
    c2t = math.cos(2 * t)
    return (-(13.0 - c2t) / (32.0 * c), (11.0 + c2t) / (32.0 * c))


def degenerate_endpoint_lambda(t: float, side: str) -> float:
    """Endpoint lambda realized by the degenerate map whose integrand carries
    the factor (z + 1)^{-2} (side="minus") or (z - 1)^{-2} (side="plus").

    The association is fixed empirically by matching the Schwarzian value at
    the origin, S(0) = -+4 cos t - 2 cos^2 t, against R_{t,lambda}(0)
    = sin^2 t + 16 lambda cos t; the match lands on lambda_plus for
    side="minus" and lambda_minus for side="plus" (swapped relative to the
    naive reading of the side labels, consistently for every t).
    """
    if side not in ("minus", "plus"):
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    c = math.cos(t)
    s0 = 4.0 * c - 2.0 * c * c if side == "minus" else -4.0 * c - 2.0 * c * c
    lam = (s0 - math.sin(t) ** 2) / (16.0 * c)
    lo, hi = lambda_bounds(t)
    if abs(lam - lo) < 1e-12 * max(1.0, abs(lo)):
        return lo
    if abs(lam - hi) < 1e-12 * max(1.0, abs(hi)):
        return hi
    raise ArithmeticError(
        f"S(0) match {lam} is neither endpoint of ({lo}, {hi})")


def degenerate_schwarzian(t: float, side: str) -> RationalSchwarzian:
    """Exact Schwarzian of the degenerate boundary map of the given side,
    returned as R_{t,lambda} at the matching endpoint lambda.

    These are the Schwarzians of the explicit integrals

        f(z) = int_0^z (w +- 1)^{-2} sqrt((w^2 + 2 cos t w + 1)
                                          / (w^2 - 2 cos t w + 1)) dw,

    which are rational of the reduced family form; the endpoint lambda is
    selected by ``degenerate_endpoint_lambda``.
    """
    if not (0.0 < t < 0.5 * math.pi):
        raise ValueError(f"need 0 < t < pi/2, got {t}")
    lam = degenerate_endpoint_lambda(t, side)
    return build_symmetric(SymmetricParams(t, lam))
