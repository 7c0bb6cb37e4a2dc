"""Spectrum of the quantum Rabi Hamiltonian, exact and closed-form.

H = (bigomega/2) sigma_z + omega a^dag a + g sigma_x (a^dag + a)

Parity Pi = sigma_z (-1)^{a^dag a} is conserved, so H block-diagonalizes
into two tridiagonal chains indexed by boson number n: within the sector
of parity p the TLS component of the chain state at n is p(-1)^n, giving

    H_p[n, n]   = omega n + p (-1)^n bigomega / 2
    H_p[n, n+1] = g sqrt(n + 1)

The exact route diagonalizes these chains with an adaptive cutoff; the
closed-form route uses the displaced-oscillator (polaron) levels

    E0 = -g^2/omega - (bigomega/2) exp(-2 g^2 / omega^2)
    E1 = -g^2/omega + (bigomega/2) exp(-2 g^2 / omega^2)

which are exact at g = 0 and at bigomega = 0 and degrade for
bigomega > omega.
"""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import ConvergenceError, DegeneracyError, ParameterError, SizingError
from .model import (DEGENERACY_THRESHOLD, EigenSystem, Knob, LevelPair, Method,
                    ModelParams, TruncationPolicy)

# Dense sector matrices above this cutoff would not fit in memory.
_MAX_DENSE_CUTOFF = 20_000

_DEFAULT_POLICY = TruncationPolicy()


def _sector_diagonals(params: ModelParams, n_max: int, parity: int):
    """Main and off diagonal of the tridiagonal sector-`parity` chain."""
    n = np.arange(n_max + 1, dtype=float)
    signs = np.where(n.astype(int) % 2 == 0, 1.0, -1.0)
    d = params.omega * n + parity * signs * params.bigomega / 2.0
    e = params.g * np.sqrt(n[1:])
    return d, e


def build_hamiltonian(params: ModelParams, n_max: int):
    """Dense symmetric sector matrices (H_minus, H_plus), each (n_max+1)^2.

    Their direct sum is unitarily equivalent to the truncated full
    Hamiltonian on TLS x Fock(n_max).
    """
    if n_max < 1:
        raise ParameterError(f"n_max must be >= 1, got {n_max}")
    if n_max > _MAX_DENSE_CUTOFF:
        raise SizingError(f"n_max={n_max} exceeds dense limit {_MAX_DENSE_CUTOFF}")
    out = []
    for parity in (-1, +1):
        d, e = _sector_diagonals(params, n_max, parity)
        h = np.diag(d)
        idx = np.arange(n_max)
        h[idx, idx + 1] = e
        h[idx + 1, idx] = e
        out.append(h)
    return out[0], out[1]


def _sector_lowest(params, n_max, parity, k=2, with_vectors=False):
    """k lowest eigenpairs of one parity chain at fixed cutoff."""
    d, e = _sector_diagonals(params, n_max, parity)
    hi = min(k - 1, n_max)
    if with_vectors:
        vals, vecs = eigh_tridiagonal(d, e, select="i", select_range=(0, hi))
        return vals, vecs
    vals = eigh_tridiagonal(d, e, select="i", select_range=(0, hi),
                            eigvals_only=True)
    return vals, None


def _merged_lowest(params, n_max, k, with_vectors=False):
    """k lowest levels across both sectors, tagged with parity."""
    rows = []
    for parity in (-1, +1):
        vals, vecs = _sector_lowest(params, n_max, parity, k, with_vectors)
        for i, v in enumerate(vals):
            rows.append((float(v), parity, None if vecs is None else vecs[:, i]))
    rows.sort(key=lambda r: r[0])
    return rows[:k]


@lru_cache(maxsize=None)
def _converged_cutoff(params: ModelParams, policy: TruncationPolicy, k: int):
    """Adaptive cutoff search: grow until all k levels move < tol.

    Returns (energies tuple, parities tuple, n_used, converged).
    """
    n = policy.n_max
    rows = _merged_lowest(params, n, k)
    while n < policy.hard_cap:
        n_next = min(n + policy.growth_step, policy.hard_cap)
        rows_next = _merged_lowest(params, n_next, k)
        if max(abs(a[0] - b[0]) for a, b in zip(rows, rows_next)) < policy.tol:
            # n is certified: one more growth step moves nothing by tol.
            return (tuple(r[0] for r in rows), tuple(r[1] for r in rows),
                    n, True)
        rows, n = rows_next, n_next
    return (tuple(r[0] for r in rows), tuple(r[1] for r in rows), n, False)


def exact_levels(params: ModelParams,
                 policy: TruncationPolicy = _DEFAULT_POLICY) -> LevelPair:
    """Two lowest eigenvalues across both parity sectors.

    converged=False means the adaptive loop hit hard_cap with the levels
    still moving; the values are returned anyway and the caller decides.
    """
    energies, _, n_used, converged = _converged_cutoff(params, policy, 2)
    return LevelPair(e0=energies[0], e1=energies[1], method=Method.EXACT,
                     n_used=n_used, converged=converged)


def approx_levels(params: ModelParams) -> LevelPair:
    """Closed-form displaced-oscillator level pair."""
    x = math.exp(-2.0 * params.g ** 2 / params.omega ** 2)
    base = -params.g ** 2 / params.omega
    half = params.bigomega / 2.0 * x
    return LevelPair(e0=base - half, e1=base + half, method=Method.APPROX,
                     n_used=0, converged=True)


def level_gap(pair: LevelPair) -> float:
    return pair.gap


def eigensystem(params: ModelParams, k: int = 2,
                policy: TruncationPolicy = _DEFAULT_POLICY) -> EigenSystem:
    """Lowest-k exact eigenpairs with product-basis eigenvectors.

    Product basis ordering |down,0>, |up,0>, |down,1>, |up,1>, ...
    Each sector vector psi_n maps onto the TLS component p(-1)^n.
    """
    energies, parities, n_used, converged = _converged_cutoff(params, policy, k)
    if not converged:
        raise ConvergenceError(
            f"levels not converged at hard_cap={policy.hard_cap}")
    rows = _merged_lowest(params, n_used, k, with_vectors=True)
    dim = n_used + 1
    states = []
    for val, parity, psi in rows:
        full = np.zeros(2 * dim)
        for n in range(dim):
            sz = parity * (1 if n % 2 == 0 else -1)
            full[2 * n + (1 if sz > 0 else 0)] = psi[n]
        states.append(full)
    return EigenSystem(params=params,
                       energies=tuple(r[0] for r in rows),
                       states=tuple(states),
                       parity_labels=tuple(r[1] for r in rows),
                       n_used=n_used)


def _approx_derivative(params: ModelParams, knob: Knob, level: int) -> float:
    """Analytic derivative of the closed-form levels; sign = +1 for E1."""
    g, om, Om = params.g, params.omega, params.bigomega
    x = math.exp(-2.0 * g ** 2 / om ** 2)
    s = 1.0 if level == 1 else -1.0
    if knob == Knob.G:
        return -2.0 * g / om - s * (2.0 * g * Om / om ** 2) * x
    if knob == Knob.OMEGA:
        return g ** 2 / om ** 2 + s * (2.0 * g ** 2 * Om / om ** 3) * x
    return s * x / 2.0


@lru_cache(maxsize=None)
def _exact_bundle(params: ModelParams, policy: TruncationPolicy):
    """Levels plus Hellmann-Feynman derivatives for all three knobs.

    One converged eigensolve with vectors; the derivatives are sector-chain
    expectation values of dH/dxi:
        dE/dg        = 2 sum sqrt(n+1) psi_n psi_{n+1}
        dE/domega    = sum n psi_n^2
        dE/dbigomega = (p/2) sum (-1)^n psi_n^2
    Returns (e0, e1, derivs, n_used, converged) with derivs[level][knob].
    """
    energies, _, n_used, converged = _converged_cutoff(params, policy, 2)
    rows = _merged_lowest(params, n_used, 2, with_vectors=True)
    n = np.arange(n_used + 1, dtype=float)
    signs = np.where(np.arange(n_used + 1) % 2 == 0, 1.0, -1.0)
    derivs = []
    for val, parity, psi in rows:
        dg = 2.0 * float(np.sum(np.sqrt(n[1:]) * psi[:-1] * psi[1:]))
        dom = float(np.sum(n * psi ** 2))
        dOm = 0.5 * parity * float(np.sum(signs * psi ** 2))
        derivs.append({Knob.G: dg, Knob.OMEGA: dom, Knob.BIGOMEGA: dOm})
    return (rows[0][0], rows[1][0], tuple(derivs), n_used, converged)


def level_derivative(params: ModelParams, which: Knob, level: int,
                     method: Method,
                     policy: TruncationPolicy = _DEFAULT_POLICY) -> float:
    """dE_level/dxi for xi in {g, omega, bigomega}.

    The exact route uses the Hellmann-Feynman expectation and refuses
    points where the pair gap is inside the degeneracy threshold (the
    expectation needs a simple eigenvalue to be meaningful as a
    derivative of the labeled level).
    """
    if level not in (0, 1):
        raise ParameterError(f"level must be 0 or 1, got {level}")
    which = Knob(which)
    if Method(method) == Method.APPROX:
        return _approx_derivative(params, which, level)
    e0, e1, derivs, n_used, converged = _exact_bundle(params, policy)
    if not converged:
        raise ConvergenceError(
            f"levels not converged at hard_cap={policy.hard_cap}")
    if e1 - e0 <= DEGENERACY_THRESHOLD:
        raise DegeneracyError(
            f"gap {e1 - e0:.3e} within degeneracy threshold; "
            "Hellmann-Feynman derivative undefined")
    return derivs[level][which]


def level_pair(params: ModelParams, method: Method,
               policy: TruncationPolicy = _DEFAULT_POLICY) -> LevelPair:
    """Dispatch on method; the cycle layer calls this everywhere."""
    if Method(method) == Method.APPROX:
        return approx_levels(params)
    return exact_levels(params, policy)
