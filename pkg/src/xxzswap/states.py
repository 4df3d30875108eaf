"""Two-qubit pure states, single-qubit reduced density matrices, and the
determinant purity test.

Conventions: ``|0>`` and ``|1>`` are the sigma_z eigenstates with eigenvalues
+1 and -1; two-qubit amplitudes are ordered ``|00>, |01>, |10>, |11>`` with
qubit i the left tensor factor. All types are immutable values and every
operation returns a new value, so they can be shared freely between threads.
Global phase is kept exactly as stored; comparisons that need phase
invariance must use overlaps explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

#: Tolerance on unit norm / hermiticity enforced at construction.
NORM_TOL = 1e-12
#: Purity threshold, one order looser to absorb evolution round-off.
PURITY_TOL = 1e-10


def _norm_sq(*amps: complex) -> float:
    return float(sum(abs(a) ** 2 for a in amps))


@dataclass(frozen=True)
class QubitAmplitudes:
    """Amplitudes (a0, a1) of a normalized single-qubit pure state."""

    a0: complex
    a1: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "a0", complex(self.a0))
        object.__setattr__(self, "a1", complex(self.a1))
        n = _norm_sq(self.a0, self.a1)
        if not math.isfinite(n) or abs(n - 1.0) > NORM_TOL:
            raise ValidationError(f"qubit amplitudes not normalized: |a|^2 = {n!r}")

    @classmethod
    def normalized(cls, a0: complex, a1: complex) -> "QubitAmplitudes":
        """Rescale arbitrary amplitudes to unit norm."""
        n = math.sqrt(_norm_sq(complex(a0), complex(a1)))
        if n == 0.0:
            raise ValidationError("cannot normalize the zero vector")
        return cls(a0 / n, a1 / n)

    def as_vector(self) -> np.ndarray:
        return np.array([self.a0, self.a1])


@dataclass(frozen=True)
class TwoQubitPureState:
    """Normalized amplitudes over the computational basis."""

    c00: complex
    c01: complex
    c10: complex
    c11: complex

    def __post_init__(self) -> None:
        for name in ("c00", "c01", "c10", "c11"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        n = _norm_sq(self.c00, self.c01, self.c10, self.c11)
        if not math.isfinite(n) or abs(n - 1.0) > NORM_TOL:
            raise ValidationError(f"two-qubit amplitudes not normalized: |c|^2 = {n!r}")

    @classmethod
    def from_vector(cls, vec) -> "TwoQubitPureState":
        v = np.asarray(vec).reshape(4)
        return cls(v[0], v[1], v[2], v[3])

    def as_vector(self) -> np.ndarray:
        return np.array([self.c00, self.c01, self.c10, self.c11])

    def amplitude_matrix(self) -> np.ndarray:
        """2x2 matrix M[r, c] = amplitude of ``|r>_i |c>_j``.

        The state is a product state exactly when M has rank 1, and the
        reduced density matrix of qubit i is M M^dagger.
        """
        return np.array([[self.c00, self.c01], [self.c10, self.c11]])

    def overlap(self, other: "TwoQubitPureState") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.as_vector(), other.as_vector()))


@dataclass(frozen=True)
class QubitDensity:
    """2x2 single-qubit density matrix: Hermitian, unit trace, positive."""

    a00: complex
    a01: complex
    a10: complex
    a11: complex

    def __post_init__(self) -> None:
        for name in ("a00", "a01", "a10", "a11"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if abs(self.a10 - self.a01.conjugate()) > NORM_TOL:
            raise ValidationError("density matrix not Hermitian: a10 != conj(a01)")
        if abs(self.a00.imag) > NORM_TOL or abs(self.a11.imag) > NORM_TOL:
            raise ValidationError("density matrix diagonal must be real")
        tr = self.a00.real + self.a11.real
        if abs(tr - 1.0) > NORM_TOL:
            raise ValidationError(f"density matrix trace must be 1, got {tr!r}")
        # with unit trace both eigenvalues lie in [0, 1] iff the determinant
        # is nonnegative
        if self.determinant() < -NORM_TOL:
            raise ValidationError("density matrix has a negative eigenvalue")

    @classmethod
    def from_elements(cls, a00: complex, a01: complex, a11: complex) -> "QubitDensity":
        """Build from the upper triangle, filling a10 by hermiticity."""
        return cls(a00, a01, complex(a01).conjugate(), a11)

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.a00, self.a01], [self.a10, self.a11]])

    def determinant(self) -> float:
        """det(rho) = a00 a11 - a01 a10 (real for Hermitian input)."""
        return (self.a00 * self.a11 - self.a01 * self.a10).real

    def is_pure(self, tol: float = PURITY_TOL) -> bool:
        return self.determinant() < tol

    def pure_fidelity(self, target: QubitAmplitudes) -> float:
        """Fidelity <chi|rho|chi> against a pure target state chi."""
        v = target.as_vector()
        return float(np.real(np.conj(v) @ (self.as_matrix() @ v)))


def make_product_state(alpha: QubitAmplitudes, beta: QubitAmplitudes) -> TwoQubitPureState:
    """Tensor product of alpha on qubit i with beta on qubit j."""
    for name, q in (("qubit i (alpha)", alpha), ("qubit j (beta)", beta)):
        n = _norm_sq(q.a0, q.a1)
        if abs(n - 1.0) > NORM_TOL:
            raise ValidationError(f"{name} not normalized: |a|^2 = {n!r}")
    return TwoQubitPureState(
        alpha.a0 * beta.a0,
        alpha.a0 * beta.a1,
        alpha.a1 * beta.a0,
        alpha.a1 * beta.a1,
    )


def reduce_to_qubit(state: TwoQubitPureState, which: int) -> QubitDensity:
    """Partial trace of a pure state: ``which`` = 0 keeps qubit i, 1 keeps j."""
    if which == 0:
        a00 = abs(state.c00) ** 2 + abs(state.c01) ** 2
        a01 = state.c00 * state.c10.conjugate() + state.c01 * state.c11.conjugate()
        a11 = abs(state.c10) ** 2 + abs(state.c11) ** 2
    elif which == 1:
        a00 = abs(state.c00) ** 2 + abs(state.c10) ** 2
        a01 = state.c00 * state.c01.conjugate() + state.c10 * state.c11.conjugate()
        a11 = abs(state.c01) ** 2 + abs(state.c11) ** 2
    else:
        raise ValidationError("qubit index must be 0 (qubit i) or 1 (qubit j)")
    return QubitDensity.from_elements(a00, a01, a11)


def purity_determinant(rho: QubitDensity) -> float:
    """Determinant of a single-qubit density matrix.

    Always in [0, 1/4]: zero (within tolerance) exactly for pure states,
    1/4 for the maximally mixed state. This is the scalar that certifies
    whether an evolved qubit has disentangled from its partner.
    """
    return rho.determinant()
