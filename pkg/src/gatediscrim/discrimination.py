"""Single-query discrimination of magic-diagonal two-qubit gates.

Given two gates that are diagonal in the magic basis, everything about
telling them apart with one use is controlled by the relative phase vector
omega: the worst-case output overlap equals the distance from the origin to
the convex hull of the points e^{-i omega_k}, and a product probe always
suffices to reach it.  This module computes that fidelity, builds an
optimal product probe, and packages the Helstrom error bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import canonical, geometry
from .errors import (
    ConstructionFailedError,
    DomainError,
    NotInHullError,
    NotNormalizedError,
    NotProductError,
)
from .numerics import wrap_angle

_SQ2 = 1.0 / math.sqrt(2.0)


class CaseTag(enum.Enum):
    ORIGIN_INSIDE = "OriginInside"
    ORIGIN_OUTSIDE = "OriginOutside"


@dataclass(frozen=True)
class ProbeState:
    """A two-qubit probe, stored both as magic amplitudes and a ket.

    `u` holds the magic-basis amplitudes, `psi_computational` the same state
    in the computational basis.  For product states the single-qubit factors
    are attached with a fixed gauge (first significant component of
    `local_a` real nonnegative); entangled states carry None.
    """

    u: np.ndarray
    psi_computational: np.ndarray
    local_a: np.ndarray | None
    local_b: np.ndarray | None
    via_fallback: bool = False

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.u) ** 2


@dataclass(frozen=True)
class DiscriminationReport:
    omega: np.ndarray
    fidelity: float
    p1: float
    p2: float
    error_probability: float
    perfectly_distinguishable: bool
    case: CaseTag
    probe: ProbeState
    achieved_value: float


def concurrence(u) -> float:
    """|sum_k u_k^2| for normalized magic amplitudes; 0 iff product state."""
    u = np.asarray(u, dtype=complex).ravel()
    if u.shape != (4,):
        raise DomainError(f"magic amplitudes must have 4 entries, got {u.shape}")
    n = float(np.sum(np.abs(u) ** 2))
    if abs(n - 1.0) > 1e-10:
        raise NotNormalizedError(
            f"amplitudes have squared norm {n!r}, expected 1 within 1e-10"
        )
    return float(abs(np.sum(u * u)))


def factor_product(u, tol: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Split a product state given by magic amplitudes into qubit factors.

    Returns normalized (local_a, local_b) with kron(local_a, local_b) equal
    to the computational ket up to the stored gauge.  Raises NotProductError
    when the concurrence exceeds `tol`, which signals a construction bug in
    the caller rather than a user input problem.
    """
    u = np.asarray(u, dtype=complex).ravel()
    c = concurrence(u)
    if c > tol:
        raise NotProductError(f"concurrence {c:.3e} exceeds tolerance {tol:g}")
    amp = (canonical.MAGIC_BASIS @ u).reshape(2, 2)
    row = int(np.argmax(np.sum(np.abs(amp) ** 2, axis=1)))
    b = amp[row] / np.linalg.norm(amp[row])
    a = amp @ b.conj()
    a = a / np.linalg.norm(a)
    # gauge: rotate the first significant component of `a` to the real axis
    lead = int(np.argmax(np.abs(a) > 1e-9))
    phase = a[lead] / abs(a[lead])
    return a * phase.conjugate(), b * phase


def error_probability(fid: float, p1: float, p2: float) -> float:
    """Helstrom bound (1 - sqrt(1 - 4 p1 p2 F^2)) / 2 for overlap F."""
    if p1 < -1e-12 or p2 < -1e-12 or abs(p1 + p2 - 1.0) > 1e-9:
        raise DomainError(f"priors ({p1!r}, {p2!r}) must be nonnegative and sum to 1")
    if fid < -1e-9 or fid > 1.0 + 1e-9:
        raise DomainError(f"fidelity {fid!r} outside [0, 1]")
    f = min(max(fid, 0.0), 1.0)
    rad = 1.0 - 4.0 * max(p1, 0.0) * max(p2, 0.0) * f * f
    return 0.5 * (1.0 - math.sqrt(max(rad, 0.0)))


def _probe_from_amplitudes(u, via_fallback: bool = False) -> ProbeState:
    u = np.asarray(u, dtype=complex).ravel()
    n = float(np.sum(np.abs(u) ** 2))
    if abs(n - 1.0) > 1e-12:
        raise NotNormalizedError(f"probe amplitudes squared norm {n!r} != 1")
    psi = canonical.MAGIC_BASIS @ u
    try:
        a, b = factor_product(u)
    except NotProductError:
        a = b = None
    return ProbeState(
        u=u,
        psi_computational=psi,
        local_a=a,
        local_b=b,
        via_fallback=via_fallback,
    )


def probe_from_factors(psi_a, psi_b, via_fallback: bool = False) -> ProbeState:
    """ProbeState for an explicit product ket psi_a x psi_b."""
    a = np.asarray(psi_a, dtype=complex).ravel()
    b = np.asarray(psi_b, dtype=complex).ravel()
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    u = canonical.MAGIC_BASIS.conj().T @ np.kron(a, b)
    return _probe_from_amplitudes(u, via_fallback=via_fallback)


def achieved_overlap(u, omega) -> float:
    """|sum_k |u_k|^2 e^{-i omega_k}| actually reached by amplitudes u."""
    w = np.abs(np.asarray(u, dtype=complex).ravel()) ** 2
    om = np.asarray(omega, dtype=float).ravel()
    return float(abs(np.sum(w * np.exp(-1j * om))))


def _amplitudes_for_hull(hull: geometry.HullResult) -> np.ndarray:
    n = len(hull.vertices)
    u = np.zeros(4, dtype=complex)
    if not hull.contains_origin:
        # the chord between the angular extremes realizes the minimum; put
        # equal weight on one representative of each end with a 90 degree
        # relative phase so the pair stays a product state
        if n == 1:
            ia, ib = hull.groups[0].indices[0], hull.groups[0].indices[1]
        else:
            ia = hull.groups[0].indices[0]
            ib = hull.groups[-1].indices[0]
        u[ia] = _SQ2
        u[ib] = 1j * _SQ2
        return u
    # origin inside: weights come from balancing the edge midpoints, walked
    # around an even cycle so the alternating-phase trick cancels sum(u^2)
    if n == 2:
        cyc = [0, 1]
    elif n == 3:
        dup = max(range(3), key=lambda i: hull.groups[i].multiplicity)
        cyc = []
        for i in range(3):
            cyc.append(i)
            if i == dup:
                cyc.append(i)
    else:
        cyc = [0, 1, 2, 3]
    pts = np.array([hull.vertices[i].xy for i in cyc])
    m = len(cyc)
    mids = 0.5 * (pts + np.roll(pts, -1, axis=0))
    alpha = geometry.convex_coefficients(mids, np.zeros(2), tol=1e-9)
    w = 0.5 * (alpha + np.roll(alpha, 1))
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    taken = [0] * n
    for pos in range(m):
        g = cyc[pos]
        orig = hull.groups[g].indices[taken[g]]
        taken[g] += 1
        u[orig] = math.sqrt(w[pos]) * (1.0 if pos % 2 == 0 else 1.0j)
    return u


def construct_probe(
    omega,
    dedupe_tol: float = 1e-10,
    achieve_tol: float = 1e-9,
    concurrence_tol: float = 1e-9,
    use_fallback: bool = True,
) -> ProbeState:
    """Optimal product probe for the relative phase vector omega.

    The returned state is a product state (concurrence below
    `concurrence_tol`) whose overlap |<psi|W|psi>| under the rotation W
    fixed by omega equals the hull minimum within `achieve_tol`.  If the
    closed-form construction misses, a deterministic numerical search runs
    instead and the result is tagged `via_fallback`; if both miss,
    ConstructionFailedError.
    """
    om = wrap_angle(np.asarray(omega, dtype=float).ravel())
    if om.shape != (4,):
        raise DomainError(f"omega must have 4 entries, got {om.shape}")
    hull = geometry.hull_of_phases(wrap_angle(-om), tol=dedupe_tol)
    first_err = None
    try:
        probe = _probe_from_amplitudes(_amplitudes_for_hull(hull))
        _validate_probe(probe, om, hull.min_distance, achieve_tol, concurrence_tol)
        return probe
    except (NotInHullError, ConstructionFailedError, NotProductError) as err:
        first_err = err
        if not use_fallback:
            raise
    from . import oracle  # heavy import kept local; also avoids a cycle

    w_gate = canonical.from_magic_phases(om)
    cfg = oracle.SearchConfig(
        grid_steps=24, refinement_rounds=18, shrink_factor=0.25, seed=0
    )
    _, probe = oracle.min_over_product_states(np.eye(4, dtype=complex), w_gate, cfg)
    probe = replace(probe, via_fallback=True)
    try:
        _validate_probe(probe, om, hull.min_distance, achieve_tol, concurrence_tol)
    except ConstructionFailedError as err:
        raise ConstructionFailedError(
            f"fallback search also missed tolerance: {err} "
            f"(construction error was: {first_err})"
        ) from err
    return probe


def _validate_probe(probe, omega, target, achieve_tol, concurrence_tol):
    got = achieved_overlap(probe.u, omega)
    c = concurrence(probe.u)
    if abs(got - target) > achieve_tol or c > concurrence_tol:
        raise ConstructionFailedError(
            f"probe reaches {got!r} against hull minimum {target!r} "
            f"with concurrence {c:.3e}"
        )


def fidelity(u1, u2, tol: float = 1e-8) -> tuple[float, np.ndarray]:
    """Worst-case single-query overlap of two magic-diagonal gates.

    Returns (F, omega); F is the origin distance of the hull of the points
    e^{-i omega_k}, i.e. min over probes of |<psi| u1^dag u2 |psi>|.
    """
    om = canonical.relative_phases(u1, u2, tol=tol)
    hull = geometry.hull_of_phases(wrap_angle(-om), tol=1e-10)
    return hull.min_distance, om


def perfectly_distinguishable(u1, u2, tol: float = 1e-8) -> bool:
    """True when one query separates the gates with certainty."""
    om = canonical.relative_phases(u1, u2, tol=tol)
    return geometry.arc_spread(om) >= math.pi - 1e-10


def discriminate(u1, u2, p1: float = 0.5, tol: float = 1e-8) -> DiscriminationReport:
    """Full single-query analysis of a magic-diagonal gate pair."""
    if not (-1e-12 <= p1 <= 1.0 + 1e-12):
        raise DomainError(f"prior p1 = {p1!r} outside [0, 1]")
    p1 = min(max(p1, 0.0), 1.0)
    p2 = 1.0 - p1
    om = canonical.relative_phases(u1, u2, tol=tol)
    hull = geometry.hull_of_phases(wrap_angle(-om), tol=1e-10)
    probe = construct_probe(om)
    return DiscriminationReport(
        omega=om,
        fidelity=hull.min_distance,
        p1=p1,
        p2=p2,
        error_probability=error_probability(hull.min_distance, p1, p2),
        perfectly_distinguishable=geometry.arc_spread(om) >= math.pi - 1e-10,
        case=(
            CaseTag.ORIGIN_INSIDE
            if hull.contains_origin
            else CaseTag.ORIGIN_OUTSIDE
        ),
        probe=probe,
        achieved_value=achieved_overlap(probe.u, om),
    )
