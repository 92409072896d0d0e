"""
Banded transition operator of the balanced walk and the discrete calculus around it.

All functions are pure: they read an immutable Environment and LatticeFunctions
and materialize new LatticeFunctions. Applying P or its adjoint grows the window
by one site on each side. Sums use np.sum, which is pairwise for contiguous
arrays, so long inner products keep their rounding error small.
"""

from typing import Tuple

import numpy as np

from core.domain.entities.environment import Environment
from core.domain.value_objects.lattice_function import LatticeFunction


def _grown(u: LatticeFunction, by: int = 1) -> Tuple[int, int]:
    return u.lo - by, u.hi + by


def apply_P(env: Environment, u: LatticeFunction) -> LatticeFunction:
    """(Pu)(k) = omega_k u(k-1) + (1 - 2 omega_k) u(k) + omega_k u(k+1) on the grown window"""
    lo, hi = _grown(u)
    omega = env.omega_slice(lo, hi)
    padded = u.on_window(lo - 1, hi + 1)
    values = omega * padded[:-2] + (1.0 - 2.0 * omega) * padded[1:-1] + omega * padded[2:]
    return LatticeFunction(lo=lo, values=values)


def apply_P_adjoint(env: Environment, u: LatticeFunction) -> LatticeFunction:
    """(P*u)(j) = omega_{j-1} u(j-1) + (1 - 2 omega_j) u(j) + omega_{j+1} u(j+1); preserves total mass"""
    lo, hi = _grown(u)
    env.require_window(lo, hi, "apply_P_adjoint")
    flux = env.omega_slice(u.lo, u.hi) * u.values
    values = np.zeros(hi - lo + 1)
    values[1:-1] += u.values - 2.0 * flux
    values[:-2] += flux
    values[2:] += flux
    return LatticeFunction(lo=lo, values=values)


def gradient(u: LatticeFunction) -> LatticeFunction:
    """nabla u(k) = u(k+1) - u(k), supported on [lo-1, hi]"""
    padded = u.on_window(u.lo - 1, u.hi + 1)
    return LatticeFunction(lo=u.lo - 1, values=np.diff(padded))


def laplacian(u: LatticeFunction) -> LatticeFunction:
    """Delta u(k) = u(k+1) - 2u(k) + u(k-1), supported on [lo-1, hi+1]"""
    padded = u.on_window(u.lo - 2, u.hi + 2)
    return LatticeFunction(lo=u.lo - 1, values=padded[2:] - 2.0 * padded[1:-1] + padded[:-2])


def _overlap(u: LatticeFunction, v: LatticeFunction) -> Tuple[int, int]:
    return max(u.lo, v.lo), min(u.hi, v.hi)


def inner(u: LatticeFunction, v: LatticeFunction) -> float:
    """<u, v> = sum_k u(k) v(k)"""
    lo, hi = _overlap(u, v)
    if lo > hi:
        return 0.0
    return float(np.sum(u.on_window(lo, hi) * v.on_window(lo, hi)))


def inner_pi(env: Environment, u: LatticeFunction, v: LatticeFunction) -> float:
    """<u, v>_pi = sum_k pi_k u(k) v(k) with pi_k = 1/omega_k"""
    lo, hi = _overlap(u, v)
    if lo > hi:
        return 0.0
    return float(np.sum(env.pi_slice(lo, hi) * u.on_window(lo, hi) * v.on_window(lo, hi)))


def l1(u: LatticeFunction) -> float:
    return float(np.sum(np.abs(u.values)))


def l2(u: LatticeFunction) -> float:
    return float(np.sqrt(np.sum(np.square(u.values))))


def linf(u: LatticeFunction) -> float:
    return float(np.max(np.abs(u.values)))


def l1_pi(env: Environment, u: LatticeFunction) -> float:
    return float(np.sum(env.pi_slice(u.lo, u.hi) * np.abs(u.values)))


def l2_pi(env: Environment, u: LatticeFunction) -> float:
    return float(np.sqrt(np.sum(env.pi_slice(u.lo, u.hi) * np.square(u.values))))


def linf_pi(env: Environment, u: LatticeFunction) -> float:
    """Essential sup with respect to pi; pi charges every site, so this is the plain sup"""
    env.require_window(u.lo, u.hi, "linf_pi")
    return linf(u)


def dirichlet_E(u: LatticeFunction, v: LatticeFunction) -> float:
    """E(u, v) = <nabla u, nabla v>; does not depend on the environment"""
    return inner(gradient(u), gradient(v))


def dirichlet_E2(env: Environment, u: LatticeFunction, v: LatticeFunction) -> float:
    """E_2(u, v) = <u, (I - P^2) v>_pi"""
    two_steps = apply_P(env, apply_P(env, v))
    return inner_pi(env, u, v - two_steps)


def dirichlet_E2_explicit(env: Environment, u: LatticeFunction) -> float:
    """E_2(u, u) written as 2 ||nabla u||^2 - <omega, |Delta u|^2>, which shows the omega dependence"""
    lap = laplacian(u)
    weighted = float(np.sum(env.omega_slice(lap.lo, lap.hi) * np.square(lap.values)))
    return 2.0 * dirichlet_E(u, u) - weighted


def one_step_ultracontractivity(env: Environment, u: LatticeFunction) -> Tuple[float, float]:
    """(||Pu||_{L-inf(pi)}, 1/2 ||u||_{L1(pi)}); the first never exceeds the second"""
    return linf_pi(env, apply_P(env, u)), 0.5 * l1_pi(env, u)
