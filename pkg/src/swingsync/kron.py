"""Kron reduction: Schur-complement elimination of non-generator buses.

Eliminating the algebraic bus-voltage constraints leaves the all-generator
coupling data

    S     = L11 - L12 L22^{-1} L12^T          (Schur complement)
    X     = (L_D + S)^{-1} L_D                 with  X 1 = 1
    Gamma = L_D X                              symmetric positive definite,
                                               every entry strictly positive.

L_D + S is a symmetric positive definite M-matrix for any valid connected
network, so all inverses here are realised as Cholesky factor-and-solve;
no matrix inverse is ever formed explicitly.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import DimensionMismatch, SingularSystem
from .network import LaplacianBlocks, PowerNetwork, build_laplacian, build_LD


@dataclass(frozen=True, eq=False)
class KronSystem:
    """Reduced-order algebraic data of a power network."""

    L_D: np.ndarray  # (n, n) positive diagonal
    schur: np.ndarray  # (n, n) Schur complement of L22 in L
    X: np.ndarray  # (n, n) bus-voltage influence matrix
    Gamma: np.ndarray  # (n, n) generator coupling matrix

    @property
    def n(self) -> int:
        return self.L_D.shape[0]


def _spd_factor(A: np.ndarray, what: str):
    try:
        return cho_factor(A)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"{what} failed to factor: {exc}") from exc


def kron_reduce(net: PowerNetwork, blocks: LaplacianBlocks | None = None) -> KronSystem:
    """Compute the Schur complement, X and Gamma for a validated network."""
    if blocks is None:
        blocks = build_laplacian(net)
    L_D = build_LD(net)
    if net.n_bar > 0:
        c22 = _spd_factor(blocks.L22, "L22")
        S = blocks.L11 - blocks.L12 @ cho_solve(c22, blocks.L12.T)
    else:
        S = blocks.L11.copy()
    S = 0.5 * (S + S.T)
    cA = _spd_factor(L_D + S, "L_D + Schur complement")
    X = cho_solve(cA, L_D)
    Gamma = L_D @ X
    return KronSystem(L_D=L_D, schur=S, X=X, Gamma=Gamma)


def gen_bus_phasors(ks: KronSystem, E, delta) -> np.ndarray:
    """Complex generator-bus voltages for generator phasors E_i exp(i delta_i).

    Solves the diagonal system L_D V_G = Gamma E_G.
    """
    E = np.asarray(E, dtype=float)
    delta = np.asarray(delta, dtype=float)
    n = ks.n
    if E.shape != (n,) or delta.shape != (n,):
        raise DimensionMismatch(f"E and delta must have length n={n}")
    e_g = E * np.exp(1j * delta)
    return (ks.Gamma @ e_g) / np.diag(ks.L_D)


def recover_gen_bus_voltages(ks: KronSystem, E, delta):
    """Generator-bus voltage amplitudes and phases from generator states."""
    v_g = gen_bus_phasors(ks, E, delta)
    return np.abs(v_g), np.angle(v_g)


def recover_nongen_voltages(blocks: LaplacianBlocks, v_g_complex) -> np.ndarray:
    """Non-generator bus voltage phasors: solve L22 V = -L12^T V_G."""
    v_g = np.asarray(v_g_complex, dtype=complex)
    n = blocks.L11.shape[0]
    if v_g.shape != (n,):
        raise DimensionMismatch(f"V_G must have length n={n}")
    n_bar = blocks.L22.shape[0]
    if n_bar == 0:
        return np.zeros(0, dtype=complex)
    c22 = _spd_factor(blocks.L22, "L22")
    rhs = -(blocks.L12.T @ v_g)
    sol = cho_solve(c22, np.column_stack([rhs.real, rhs.imag]))
    return sol[:, 0] + 1j * sol[:, 1]
