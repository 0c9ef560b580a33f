"""Weighted circle actions on the unit 3-sphere and their finite extensions.

The circle acts on S^3 in C^2 = R^4 by theta . (z1, z2) =
(e^{i p theta} z1, e^{i q theta} z2) with coprime nonzero weights (p, q).
A finite isometry group Gamma extends the action exactly when every element
normalizes the circle: conjugation must carry the infinitesimal generator J
to +-J.  The joint transformations {R(theta) gamma} then form a compact
group, so the orbit distance is a true metric on the quotient.

Presets: the trivial group; the cyclic group of order m acting by
(z1, z2) -> (zeta z1, conj(zeta) z2); and the binary dihedral group of
order 4m.  Both presets are right quaternion multiplications, which commute
with the Hopf weights (1, 1) and normalize the torus for diagonal actions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, gcd, pi, sin

import numpy as np


ORTHOGONALITY_TOL = 1e-12
GROUP_TOL = 1e-9


def rotation_block(phi: float) -> np.ndarray:
    c, s = cos(phi), sin(phi)
    return np.array([[c, -s], [s, c]])


def circle_matrix(p: int, q: int, theta: float) -> np.ndarray:
    """The action of e^{i theta}: block rotations by p*theta and q*theta."""
    out = np.zeros((4, 4))
    out[:2, :2] = rotation_block(p * theta)
    out[2:, 2:] = rotation_block(q * theta)
    return out


def circle_generator(p: int, q: int) -> np.ndarray:
    """Infinitesimal generator J = d/dtheta R(theta) at theta = 0."""
    out = np.zeros((4, 4))
    out[0, 1], out[1, 0] = -p, p
    out[2, 3], out[3, 2] = -q, q
    return out


def gamma_trivial() -> np.ndarray:
    return np.eye(4)[None, :, :].copy()


def gamma_cyclic(m: int) -> np.ndarray:
    """Order m, generated by (z1, z2) -> (zeta z1, conj(zeta) z2)."""
    if m < 1:
        raise ValueError("cyclic order must be >= 1")
    out = np.zeros((m, 4, 4))
    for k in range(m):
        phi = 2 * pi * k / m
        out[k, :2, :2] = rotation_block(phi)
        out[k, 2:, 2:] = rotation_block(-phi)
    return out


def _right_j_matrix() -> np.ndarray:
    # right quaternion multiplication by j: (z1, z2) -> (-z2, z1)
    out = np.zeros((4, 4))
    out[0, 2] = out[1, 3] = -1.0
    out[2, 0] = out[3, 1] = 1.0
    return out


def gamma_binary_dihedral(m: int) -> np.ndarray:
    """Order 4m: right multiplications by e^{i k pi / m} and e^{i k pi / m} j."""
    if m < 1:
        raise ValueError("binary dihedral parameter must be >= 1")
    rj = _right_j_matrix()
    out = np.zeros((4 * m, 4, 4))
    for k in range(2 * m):
        phi = pi * k / m
        cyc = np.zeros((4, 4))
        cyc[:2, :2] = rotation_block(phi)
        cyc[2:, 2:] = rotation_block(-phi)
        out[k] = cyc
        out[2 * m + k] = rj @ cyc
    return out


def gamma_from_matrices(matrices) -> np.ndarray:
    arr = np.asarray(matrices, dtype=float)
    if arr.ndim != 3 or arr.shape[1:] != (4, 4):
        raise ValueError("gamma must be a list of 4x4 matrices")
    return arr


def parse_gamma(value) -> np.ndarray:
    """Parse the JSON form: "trivial" | "cyclic:m" | "binary-dihedral:m" |
    {"matrices": [...]}."""
    if isinstance(value, str):
        if value == "trivial":
            return gamma_trivial()
        head, sep, tail = value.partition(":")
        if sep and tail.isdigit():
            if head == "cyclic":
                return gamma_cyclic(int(tail))
            if head == "binary-dihedral":
                return gamma_binary_dihedral(int(tail))
        raise ValueError(f"unknown group preset {value!r}")
    if isinstance(value, dict) and "matrices" in value:
        return gamma_from_matrices(value["matrices"])
    raise ValueError("gamma must be a preset string or {'matrices': [...]}")


def validate_gamma(gammas: np.ndarray, p: int, q: int) -> None:
    """Reject element lists that do not define a group extending the action.

    Checks, in order: shape, orthogonality (1e-12), orientation preservation,
    presence of the identity, distinctness, closure under composition, and
    normalization of the circle (gamma J gamma^T = +-J).
    """
    if gammas.ndim != 3 or gammas.shape[1:] != (4, 4):
        raise ValueError("gamma must have shape (count, 4, 4)")
    g = len(gammas)
    if g == 0:
        raise ValueError("gamma must contain at least the identity")
    eye = np.eye(4)
    for m in gammas:
        if np.max(np.abs(m.T @ m - eye)) > ORTHOGONALITY_TOL:
            raise ValueError("gamma element is not orthogonal to 1e-12")
        if abs(np.linalg.det(m) - 1.0) > GROUP_TOL:
            raise ValueError("gamma element must preserve orientation (det +1)")
    if not any(np.max(np.abs(m - eye)) <= GROUP_TOL for m in gammas):
        raise ValueError("gamma must contain the identity")
    for i in range(g):
        for j in range(i + 1, g):
            if np.max(np.abs(gammas[i] - gammas[j])) <= GROUP_TOL:
                raise ValueError("gamma contains duplicate elements")
    for i in range(g):
        prod = gammas[i] @ gammas
        for j in range(g):
            gap = np.min(np.max(np.abs(gammas - prod[j]), axis=(1, 2)))
            if gap > GROUP_TOL:
                raise ValueError("gamma is not closed under composition")
    j_gen = circle_generator(p, q)
    for m in gammas:
        conj = m @ j_gen @ m.T
        if min(np.max(np.abs(conj - j_gen)), np.max(np.abs(conj + j_gen))) > GROUP_TOL:
            raise ValueError(
                "gamma element does not normalize the circle action "
                "(gamma J gamma^T must be +-J)"
            )


@dataclass(eq=False)
class IsometricActionSpec:
    """A weighted circle action on S^3/Gamma plus sampling parameters.

    weights: coprime nonzero pair (p, q).
    gamma: (count, 4, 4) array of orthogonal matrices forming a finite group
      that normalizes the circle; validated at construction.
    samples: number of quasi-uniform sample points (at least 50).
    seed: RNG seed; together with the rest of the spec it determines every
      reported number bit for bit.
    """

    weights: tuple[int, int]
    gamma: np.ndarray = field(default_factory=gamma_trivial)
    samples: int = 800
    seed: int = 0

    def __post_init__(self):
        p, q = self.weights
        p, q = int(p), int(q)
        if p == 0 or q == 0:
            raise ValueError("circle weights must be nonzero")
        if gcd(p, q) != 1:
            raise ValueError(f"weights {(p, q)} are not coprime")
        self.weights = (p, q)
        self.gamma = np.asarray(self.gamma, dtype=float)
        validate_gamma(self.gamma, p, q)
        self.samples = int(self.samples)
        if self.samples < 50:
            raise ValueError("at least 50 sample points are required")
        self.seed = int(self.seed)

    def with_samples(self, samples: int) -> "IsometricActionSpec":
        return IsometricActionSpec(
            weights=self.weights, gamma=self.gamma, samples=samples, seed=self.seed
        )
