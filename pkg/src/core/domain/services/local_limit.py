"""
Scaled profiles, the Gaussian reference and the sup-errors of the local limit theorems.

Profiles are piecewise constant in x on the cells [k/sqrt(n), (k+1)/sqrt(n)), so every
supremum over an interval I is taken over the sites k = floor(sqrt(n) min I) ..
floor(sqrt(n) max I). Within one cell the Gaussian is monotone apart from a possible
peak at 0, so comparing the cell value with the Gaussian at both clipped cell ends
(and at 0 when the cell contains it) gives the exact supremum.
"""

import math
from typing import Dict, Iterable, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from core.domain.entities.environment import Environment
from core.domain.entities.kernel_snapshot import KernelKind, KernelSnapshot
from core.domain.entities.profile_curve import ProfileCurve, ProfileVariant
from core.domain.exceptions import ParameterError, UsageError
from core.domain.services.kernel_evolution import forward_pmf, iter_forward, iter_reversed_a, pmf_mean_variance
from core.domain.services.poissonization import poissonized_many
from core.domain.value_objects.gaussian_ref import GaussianRef
from core.domain.value_objects.lattice_function import LatticeFunction
from infrastructure.logging import get_logger

logger = get_logger(__name__)

DEFAULT_INTERVAL = (-2.0, 2.0)
DISCRETE_VARIANTS = ("g", "pmf", "raw")
ROUTES = ("reversal", "direct")

Interval = Tuple[float, float]


def phi(gref: GaussianRef, x):
    """Centered normal density with variance gref.sigma2"""
    return gref.density(x)


def _check_interval(interval: Interval) -> None:
    a, b = interval
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise ParameterError(f"invalid_interval | interval=<[{a}, {b}]> | expected a < b")


def cell_grid(time: float, interval: Interval) -> Tuple[np.ndarray, float]:
    """Sites floor(sqrt(T) a) .. floor(sqrt(T) b) and the scale sqrt(T)"""
    _check_interval(interval)
    if not time > 0:
        raise UsageError(f"degenerate_scaling | time=<{time}> | expected a positive time")
    root = math.sqrt(time)
    first, last = math.floor(root * interval[0]), math.floor(root * interval[1])
    return np.arange(first, last + 1, dtype=np.int64), root


def _on_sites(f: LatticeFunction, sites: np.ndarray) -> np.ndarray:
    return f.on_window(int(sites[0]), int(sites[-1]))


_SCALED_VARIANTS = {
    KernelKind.REVERSED_A: ProfileVariant.F_A,
    KernelKind.REVERSED_B: ProfileVariant.F_B,
    KernelKind.POISSONIZED: ProfileVariant.F_T,
    KernelKind.FORWARD: ProfileVariant.PMF,
}


def scaled_profile(env: Environment, snapshot: KernelSnapshot, interval: Interval = DEFAULT_INTERVAL) -> ProfileCurve:
    """sqrt(n) times the kernel at floor(sqrt(n) x), one x = k/sqrt(n) per cell"""
    if snapshot.env_fingerprint != env.fingerprint:
        raise UsageError(f"environment_mismatch | snapshot=<{snapshot.env_fingerprint}> | env=<{env.fingerprint}>")
    sites, root = cell_grid(snapshot.time, interval)
    env.require_window(int(sites[0]), int(sites[-1]), "scaled_profile")
    return ProfileCurve(
        xs=sites / root,
        values=root * _on_sites(snapshot.f, sites),
        time=snapshot.time,
        variant=_SCALED_VARIANTS[snapshot.kind],
    )


def g_profile(env: Environment, n: int) -> LatticeFunction:
    """g_n(k) = (P(X_n = k) + P(X_{n+1} = k)) / 2 from the forward evolution"""
    previous = None
    for m, p in iter_forward(env, n + 1):
        if m == n + 1:
            return (p + previous).scaled(0.5)
        previous = p
    raise ParameterError(f"invalid_horizon | n=<{n}>")


def _reversed_kernels(env: Environment, ns: Iterable[int], variant: str) -> Dict[int, LatticeFunction]:
    """a(n,.) for "pmf"/"raw", b(n,.) for "g", for every requested n, in one pass"""
    wanted = sorted(set(ns))
    if not wanted:
        return {}
    horizon = wanted[-1] + (1 if variant == "g" else 0)
    kernels: Dict[int, LatticeFunction] = {}
    previous = None
    for m, a in iter_reversed_a(env, horizon):
        if variant == "g":
            if previous is not None and m - 1 in wanted:
                kernels[m - 1] = (a + previous).scaled(0.5)
        elif m in wanted:
            kernels[m] = a
        previous = a
    return kernels


def _modulated_values(env: Environment, kernel: LatticeFunction, sites: np.ndarray, root: float, variant: str) -> np.ndarray:
    """omega_k sqrt(n) x (pmf or g_n) via omega_k p_n(k) = omega_0 a(n,k); raw drops the omega_k factor"""
    values = env.omega(0) * root * _on_sites(kernel, sites)
    if variant == "raw":
        values = values / env.omega_slice(int(sites[0]), int(sites[-1]))
    return values


def _check_variant(variant: str, route: str) -> None:
    if variant not in DISCRETE_VARIANTS:
        raise ParameterError(f"unknown_variant | variant=<{variant}> | expected one of {DISCRETE_VARIANTS}")
    if route not in ROUTES:
        raise ParameterError(f"unknown_route | route=<{route}> | expected one of {ROUTES}")


def modulated_profile(
    env: Environment,
    n: int,
    interval: Interval = DEFAULT_INTERVAL,
    variant: str = "g",
    route: str = "reversal",
) -> ProfileCurve:
    """
    omega_{floor(sqrt(n) x)} sqrt(n) g_n(x) (variant "g") or the same with P(X_n = .)
    (variant "pmf"). route="direct" evolves the forward pmf instead of a(n,.).
    """
    _check_variant(variant, route)
    sites, root = cell_grid(n, interval)
    env.require_window(int(sites[0]), int(sites[-1]), "modulated_profile")
    if route == "reversal":
        kernel = _reversed_kernels(env, [n], variant)[n]
        values = _modulated_values(env, kernel, sites, root, variant)
    else:
        forward = g_profile(env, n) if variant == "g" else forward_pmf(env, n).f
        values = root * _on_sites(forward, sites)
        if variant != "raw":
            values = values * env.omega_slice(int(sites[0]), int(sites[-1]))
    kind = {"g": ProfileVariant.MODULATED_G, "pmf": ProfileVariant.MODULATED_A, "raw": ProfileVariant.PMF}[variant]
    return ProfileCurve(xs=sites / root, values=values, time=n, variant=kind)


def cell_sup_error(values: np.ndarray, sites: np.ndarray, root: float, interval: Interval, target) -> float:
    """sup over I of |values(cell) - target(x)| for a piecewise-constant profile"""
    a, b = interval
    left = np.maximum(sites / root, a)
    right = np.minimum((sites + 1) / root, b)
    at_left, at_right = target(left), target(right)
    highest = np.maximum(at_left, at_right)
    contains_peak = (left <= 0.0) & (0.0 <= right)
    highest = np.where(contains_peak, np.maximum(highest, target(0.0)), highest)
    lowest = np.minimum(at_left, at_right)
    return float(np.max(np.maximum(np.abs(values - lowest), np.abs(values - highest))))


def _target(gref: GaussianRef, variant: str):
    return gref.density if variant == "raw" else gref.target


def llt_sup_error_discrete(
    env: Environment,
    n: int,
    interval: Interval,
    gref: GaussianRef,
    variant: str = "g",
    route: str = "reversal",
) -> float:
    """max over the cell grid of |omega sqrt(n) (g_n or pmf_n) - phi / mu|"""
    curve = modulated_profile(env, n, interval, variant, route)
    sites, root = cell_grid(n, interval)
    return cell_sup_error(curve.values, sites, root, interval, _target(gref, variant))


def continuous_profile(env: Environment, snapshot: KernelSnapshot, interval: Interval = DEFAULT_INTERVAL) -> ProfileCurve:
    """omega_k sqrt(t) P(Y_t = k) = omega_0 sqrt(t) a(t,k) on the cell grid"""
    if snapshot.kind is not KernelKind.POISSONIZED:
        raise UsageError(f"kind_mismatch | kind=<{snapshot.kind.value}> | expected poissonized")
    sites, root = cell_grid(snapshot.time, interval)
    env.require_window(int(sites[0]), int(sites[-1]), "continuous_profile")
    values = env.omega(0) * root * _on_sites(snapshot.f, sites)
    return ProfileCurve(xs=sites / root, values=values, time=snapshot.time, variant=ProfileVariant.CONTINUOUS)


def llt_sup_error_continuous(
    env: Environment,
    t: float,
    interval: Interval,
    gref: GaussianRef,
    tol: float = 1e-12,
) -> float:
    """Sup-error of the continuous-time local limit theorem on the Poissonized kernel"""
    return _continuous_errors(env, [t], interval, lambda _: gref, tol)[0]


def _continuous_errors(env: Environment, ts: Sequence[float], interval: Interval, reference, tol: float) -> list:
    for t in ts:
        cell_grid(t, interval)
    errors = []
    for snapshot in poissonized_many(env, ts, tol):
        curve = continuous_profile(env, snapshot, interval)
        sites, root = cell_grid(snapshot.time, interval)
        errors.append(cell_sup_error(curve.values, sites, root, interval, reference(snapshot.time).target))
    return errors


def default_reference(
    env: Environment,
    n: float,
    interval: Interval = DEFAULT_INTERVAL,
    variance_route: bool = False,
) -> GaussianRef:
    """
    mu_hat = mean of 1/omega over sqrt(n) I and sigma2_hat = 2 / mu_hat; with
    variance_route the variance comes from Var(X_n) / n instead.
    """
    mu = env.average_inverse_omega(interval[0], interval[1], math.sqrt(n))
    if not variance_route:
        return GaussianRef.from_mu(mu)
    n = int(n)
    if n < 1:
        raise UsageError(f"degenerate_scaling | n=<{n}> | expected n >= 1")
    _, variance = pmf_mean_variance(forward_pmf(env, n))
    return GaussianRef(sigma2=variance / n, mu=mu)


def convergence_curve(
    env: Environment,
    n_list: Sequence[float],
    interval: Interval = DEFAULT_INTERVAL,
    gref: Optional[GaussianRef] = None,
    variant: str = "g",
    variance_route: bool = False,
    tol: float = 1e-12,
) -> pd.DataFrame:
    """
    One row (n, sup_error) per entry of n_list. Without gref each row uses its own
    default reference. variant "continuous" reads n_list as times t.
    """
    if len(n_list) == 0 or any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParameterError("invalid_n_list | expected a nonempty strictly increasing list")

    def reference(n):
        return gref if gref is not None else default_reference(env, n, interval, variance_route)

    if variant == "continuous":
        errors = _continuous_errors(env, [float(t) for t in n_list], interval, reference, tol)
    else:
        _check_variant(variant, "reversal")
        for n in n_list:
            cell_grid(n, interval)
        kernels = _reversed_kernels(env, [int(n) for n in n_list], variant)
        errors = []
        for n in n_list:
            n = int(n)
            sites, root = cell_grid(n, interval)
            env.require_window(int(sites[0]), int(sites[-1]), "convergence_curve")
            values = _modulated_values(env, kernels[n], sites, root, variant)
            errors.append(cell_sup_error(values, sites, root, interval, _target(reference(n), variant)))

    logger.info(f"convergence_curve_completed | variant=<{variant}> | rows=<{len(errors)}>", last_error=errors[-1])
    return pd.DataFrame({"n": list(n_list), "sup_error": errors})


def clt_window_error(env: Environment, n: int, x: float, y: float) -> Tuple[float, float]:
    """
    E(n,x,y) = P(sqrt(n) x < X_n <= sqrt(n) y) - int_x^y (omega_0 / omega_{floor(sqrt(n) xi)}) f_n(xi) dxi
    with f_n(xi) = sqrt(n) a(n, floor(sqrt(n) xi)), together with the bound
    p_n(floor(sqrt(n) y)) + p_n(floor(sqrt(n) x)).
    """
    sites, root = cell_grid(n, (x, y))
    env.require_window(int(sites[0]), int(sites[-1]), "clt_window_error")
    pmf = forward_pmf(env, n).f
    a = _reversed_kernels(env, [n], "pmf")[n]

    p = _on_sites(pmf, sites)
    inside = (sites > root * x) & (sites <= root * y)
    probability = float(np.sum(p[inside]))

    cell_length = np.minimum((sites + 1) / root, y) - np.maximum(sites / root, x)
    density = env.omega(0) / env.omega_slice(int(sites[0]), int(sites[-1])) * root * _on_sites(a, sites)
    integral = float(np.sum(np.clip(cell_length, 0.0, None) * density))

    bound = pmf.value_at(int(sites[-1])) + pmf.value_at(int(sites[0]))
    return probability - integral, bound
