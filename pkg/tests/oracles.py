"""Independent numerical routes used to cross-check the package.

Everything here deliberately avoids the code under test: levels come from
a dense product-basis diagonalization instead of parity chains, the
closed-form levels and slopes are rewritten from scratch, and stroke
exchanges are integrated with a trapezoid rule plus Richardson step
instead of adaptive quadrature.  Agreement between the two routes is the
point of the tests that import this module.
"""
import math

import numpy as np


def dense_hamiltonian(g, omega, bigomega, n_max):
    """Full Hamiltonian on the product basis |down,0>, |up,0>, |down,1>, ...

    No parity decomposition: the TLS term is diagonal, the coupling flips
    the TLS while raising or lowering the boson number.
    """
    dim = 2 * (n_max + 1)
    h = np.zeros((dim, dim))
    for n in range(n_max + 1):
        h[2 * n, 2 * n] = n * omega - bigomega / 2.0
        h[2 * n + 1, 2 * n + 1] = n * omega + bigomega / 2.0
    for n in range(n_max):
        c = g * math.sqrt(n + 1)
        # sigma_x (a + a^dag): |sigma, n> -> |other sigma, n+1>
        h[2 * (n + 1), 2 * n + 1] = c
        h[2 * n + 1, 2 * (n + 1)] = c
        h[2 * (n + 1) + 1, 2 * n] = c
        h[2 * n, 2 * (n + 1) + 1] = c
    return h


def dense_levels(g, omega, bigomega, n_max=200, k=2):
    """k lowest eigenvalues of the dense product-basis Hamiltonian."""
    vals = np.linalg.eigvalsh(dense_hamiltonian(g, omega, bigomega, n_max))
    return tuple(float(v) for v in vals[:k])


def parity_diagonal(n_max):
    """Diagonal of sigma_z (-1)^n on the product basis."""
    out = np.empty(2 * (n_max + 1))
    for n in range(n_max + 1):
        sign = 1.0 if n % 2 == 0 else -1.0
        out[2 * n] = -sign
        out[2 * n + 1] = sign
    return out


def polaron_pair(g, omega, bigomega):
    """Displaced-oscillator level pair, written out independently."""
    shift = g * g / omega
    overlap = math.exp(-2.0 * (g / omega) ** 2)
    return (-shift - 0.5 * bigomega * overlap,
            -shift + 0.5 * bigomega * overlap)


def polaron_slope(g, omega, bigomega, knob, level):
    """d(polaron level)/d(knob) for knob in {'g', 'omega', 'bigomega'}."""
    overlap = math.exp(-2.0 * (g / omega) ** 2)
    upper = level == 1
    if knob == "g":
        tls = 2.0 * g * bigomega / omega ** 2 * overlap
        return -2.0 * g / omega + (-tls if upper else tls)
    if knob == "omega":
        tls = 2.0 * g ** 2 * bigomega / omega ** 3 * overlap
        return g ** 2 / omega ** 2 + (tls if upper else -tls)
    if knob == "bigomega":
        return 0.5 * overlap if upper else -0.5 * overlap
    raise ValueError(knob)


def central_difference(f, x, h=1e-6):
    return (f(x + h) - f(x - h)) / (2.0 * h)


def exchange_by_occupation(levels_fn, e_const, xi_a, xi_b, n=401):
    """Signed stroke exchange from occupation changes.

    Along an energy-conserving stroke p0 E0 + p1 E1 = e_const, the
    exchange entering the substance is the integral of E0 dp0 + E1 dp1.
    Trapezoid on n samples, then one Richardson step against n//2.
    """
    def once(m):
        xs = np.array([xi_a + (xi_b - xi_a) * i / (m - 1) for i in range(m)])
        pairs = [levels_fn(x) for x in xs]
        e0 = np.array([p[0] for p in pairs])
        e1 = np.array([p[1] for p in pairs])
        p0 = (e1 - e_const) / (e1 - e0)
        p1 = 1.0 - p0
        return float(np.sum(0.5 * (e0[1:] + e0[:-1]) * np.diff(p0)
                            + 0.5 * (e1[1:] + e1[:-1]) * np.diff(p1)))
    coarse = once((n + 1) // 2)
    fine = once(n)
    return fine + (fine - coarse) / 3.0


def closed_exchange_coupling(g_a, g_b, e_start, omega):
    """Coupling-knob stroke exchange, factored differently on purpose."""
    d2 = g_b ** 2 - g_a ** 2
    return d2 * (2.0 * e_start / omega ** 2 + 1.0 / omega
                 + (g_b ** 2 + g_a ** 2) / omega ** 3)


def closed_exchange_resonator(om_a, om_b, e_start, g):
    """Resonator-knob stroke exchange via inverse-frequency differences."""
    ia, ib = 1.0 / om_a, 1.0 / om_b
    terms = (2.0 * g ** 2 * (ib ** 2 - ia ** 2) * e_start,
             (4.0 / 3.0) * g ** 4 * (ib ** 3 - ia ** 3),
             g ** 2 * (ib - ia))
    return math.fsum(terms)
