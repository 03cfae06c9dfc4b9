"""Canonical form of two-qubit gates in the magic basis.

A two-qubit unitary factors as (A x B) U_d (C x D) with single-qubit locals
and an interaction core U_d = exp(-i(ax XX + ay YY + az ZZ)).  The core is
diagonal in the magic (Bell-like) basis with eigenphase vector lambda fixed
by the interaction vector alpha; alpha lives in the Weyl chamber
pi/4 >= ax >= ay >= az >= 0, which makes it a class invariant.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import numerics
from .errors import DomainError, NotMagicDiagonalError
from .numerics import wrap_angle

PI = math.pi
QUARTER_PI = math.pi / 4.0
_SQ2 = 1.0 / math.sqrt(2.0)

# Columns: |00>+|11>, -i(|00>-|11>), |01>-|10>, -i(|01>+|10>), all over sqrt(2).
MAGIC_BASIS = _SQ2 * np.array(
    [
        [1.0, -1.0j, 0.0, 0.0],
        [0.0, 0.0, 1.0, -1.0j],
        [0.0, 0.0, -1.0, -1.0j],
        [1.0, 1.0j, 0.0, 0.0],
    ],
    dtype=complex,
)
_MAGIC_DAG = MAGIC_BASIS.conj().T


class GateClass(enum.Enum):
    IDENTITY = "Identity"
    SWAP_LIKE = "SwapLike"
    ENTANGLING = "Entangling"


@dataclass(frozen=True)
class InteractionDecomposition:
    """Result of `extract_interaction`.

    alpha:        canonical Weyl-chamber interaction vector (ax, ay, az)
    raw_phases:   magic-basis eigenphase branch before canonicalization
    global_phase: stripped scalar phase, reported in (-pi/4, pi/4]
    """

    alpha: np.ndarray
    raw_phases: np.ndarray
    global_phase: float


def check_weyl(alpha, tol: float = 1e-12) -> np.ndarray:
    """Validate ordering and bounds of an interaction vector."""
    a = np.asarray(alpha, dtype=float).ravel()
    if a.shape != (3,):
        raise DomainError(f"interaction vector must have 3 entries, got {a.shape}")
    ax, ay, az = (float(x) for x in a)
    if az < -tol:
        raise DomainError(f"alpha_z >= 0 violated: alpha_z = {az!r}")
    if ay < az - tol:
        raise DomainError(f"alpha_y >= alpha_z violated: {ay!r} < {az!r}")
    if ax < ay - tol:
        raise DomainError(f"alpha_x >= alpha_y violated: {ax!r} < {ay!r}")
    if ax > QUARTER_PI + tol:
        raise DomainError(f"alpha_x <= pi/4 violated: alpha_x = {ax!r}")
    return a


def lambda_phases(alpha) -> np.ndarray:
    """Magic-basis eigenphases (l1, l2, l3, l4) of the core fixed by alpha.

    The core acts as e^{-i l_j} on magic vector j.  The four phases sum to
    zero and obey l4 >= l1 >= l2 >= l3 inside the chamber.
    """
    ax, ay, az = check_weyl(alpha)
    return np.array(
        [
            ax - ay + az,
            -ax + ay + az,
            -ax - ay - az,
            ax + ay - az,
        ]
    )


def magic_rep(u) -> np.ndarray:
    """Conjugate a computational-basis operator into the magic basis."""
    return _MAGIC_DAG @ np.asarray(u, dtype=complex) @ MAGIC_BASIS


def build_ud(alpha) -> np.ndarray:
    """Interaction core exp(-i(ax XX + ay YY + az ZZ)) as a 4x4 unitary."""
    lam = lambda_phases(alpha)
    return (MAGIC_BASIS * np.exp(-1j * lam)) @ _MAGIC_DAG


def from_magic_phases(omega) -> np.ndarray:
    """Unitary acting as e^{-i omega_k} on magic vector k, any phase vector."""
    om = np.asarray(omega, dtype=float).ravel()
    if om.shape != (4,):
        raise DomainError(f"phase vector must have 4 entries, got {om.shape}")
    return (MAGIC_BASIS * np.exp(-1j * om)) @ _MAGIC_DAG


def _fold_chamber(a: np.ndarray) -> np.ndarray:
    # reduce each coordinate modulo the pi/2 translation + sign lattice,
    # then order; this is the unique chamber representative of the orbit
    a = np.mod(a, 0.5 * PI)
    a = np.where(a > QUARTER_PI, 0.5 * PI - a, a)
    return np.sort(a)[::-1]


def extract_interaction(u, tol: float = 1e-9) -> InteractionDecomposition:
    """Recover the Weyl-chamber interaction vector of a 4x4 unitary.

    Works for any unitary, magic-diagonal or dressed with local factors.
    Round-trips with `build_ud` to ~1e-9 away from degenerate clusters.
    """
    u = numerics.require_unitary(u, tol=tol, name="gate")
    det = complex(np.linalg.det(u))
    global_phase = cmath.phase(det) / 4.0
    v = magic_rep(u) * cmath.exp(-1j * global_phase)
    gram = v.T @ v
    theta = numerics.unitary_eigenphases(gram)
    lam = wrap_angle(-0.5 * theta)
    # halving each phase can flip the parity of the sum; legal branch moves
    # only come in pairs, so restore sum(lam) = 0 (mod 2 pi) explicitly
    if round(float(np.sum(lam)) / PI) % 2 != 0:
        lam[3] = wrap_angle(lam[3] + PI)
    alpha = np.array(
        [
            0.5 * (lam[0] + lam[3]),
            0.5 * (lam[1] + lam[3]),
            0.5 * (lam[0] + lam[1]),
        ]
    )
    return InteractionDecomposition(
        alpha=_fold_chamber(alpha),
        raw_phases=wrap_angle(lam),
        global_phase=global_phase,
    )


def relative_phases(u1, u2, tol: float = 1e-8) -> np.ndarray:
    """Phase vector omega of W = u1^dag u2 for magic-diagonal inputs.

    Both operators must be diagonal in the magic basis within `tol`; W then
    acts as e^{-i omega_k} on magic vector k.  Entries are wrapped to
    (-pi, pi] and kept in magic-basis order (not sorted).
    """
    mats = []
    for name, u in (("first gate", u1), ("second gate", u2)):
        u = numerics.require_unitary(u, tol=max(tol, 1e-9), name=name)
        m = magic_rep(u)
        off = m - np.diag(np.diag(m))
        worst = float(np.max(np.abs(off)))
        if worst > tol:
            raise NotMagicDiagonalError(
                f"{name} has off-diagonal magic-basis weight {worst:.3e} "
                f"(tolerance {tol:g}); decompose it and strip the local "
                f"factors first"
            )
        mats.append(np.diag(m))
    return wrap_angle(-np.angle(mats[0].conj() * mats[1]))


def classify(alpha, tol: float = 1e-10) -> GateClass:
    """Identity, swap-like, or entangling, by chamber position."""
    a = check_weyl(alpha)
    if np.max(np.abs(a)) <= tol:
        return GateClass.IDENTITY
    if np.max(np.abs(a - QUARTER_PI)) <= tol:
        return GateClass.SWAP_LIKE
    return GateClass.ENTANGLING


def random_weyl_vector(rng) -> np.ndarray:
    """Uniform draw from the open Weyl chamber."""
    while True:
        a = np.sort(rng.uniform(0.0, QUARTER_PI, size=3))[::-1]
        if a[2] > 0.0 and a[0] < QUARTER_PI and a[0] > a[1] > a[2]:
            return a
