"""Quasi-Newton minimization of smooth + L1 objectives.

Implements orthant-wise limited-memory BFGS: the L1 term is handled
through a pseudo-gradient, sign-projected search directions, and a line
search constrained to the current orthant. With l1 = 0 the algorithm
reduces to plain L-BFGS with Armijo backtracking.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_ARMIJO_C = 1e-4
_BACKTRACK = 0.5
_MAX_BACKTRACKS = 60
_CURVATURE_EPS = 1e-10


@dataclass
class MinimizeResult:
    x: np.ndarray
    fx: float
    iterations: int
    objective_history: list[float] = field(default_factory=list)
    grad_norm: float = float("inf")
    converged: bool = False


def pseudo_gradient(x: np.ndarray, grad: np.ndarray, l1: float) -> np.ndarray:
    """Steepest-descent direction of smooth(x) + l1*|x| at a kink."""
    if l1 == 0.0:
        return grad.copy()
    pg = np.where(x > 0, grad + l1, np.where(x < 0, grad - l1, 0.0))
    at_zero = x == 0
    right = grad[at_zero] + l1
    left = grad[at_zero] - l1
    pg[at_zero] = np.where(right < 0, right, np.where(left > 0, left, 0.0))
    return pg


def _two_loop(
    pg: np.ndarray,
    s_list: list[np.ndarray],
    y_list: list[np.ndarray],
) -> np.ndarray:
    q = pg.copy()
    alphas = []
    rhos = [1.0 / float(np.dot(y, s)) for s, y in zip(s_list, y_list)]
    for s, y, rho in zip(reversed(s_list), reversed(y_list), reversed(rhos)):
        a = rho * float(np.dot(s, q))
        alphas.append(a)
        q -= a * y
    if s_list:
        s, y = s_list[-1], y_list[-1]
        q *= float(np.dot(s, y)) / float(np.dot(y, y))
    for (s, y, rho), a in zip(zip(s_list, y_list, rhos), reversed(alphas)):
        b = rho * float(np.dot(y, q))
        q += (a - b) * s
    return q


def minimize_owlqn(
    fun: Callable[[np.ndarray], tuple[float, np.ndarray]],
    x0: np.ndarray,
    l1: float = 0.0,
    max_iterations: int = 100,
    tol: float = 1e-5,
    history_size: int = 10,
) -> MinimizeResult:
    """Minimize fun(x)[0] + l1*‖x‖₁ where fun returns (value, gradient)."""
    x = np.asarray(x0, dtype=np.float64).copy()
    f, g = fun(x)
    fx = f + l1 * float(np.abs(x).sum())
    result = MinimizeResult(x=x, fx=fx, iterations=0, objective_history=[fx])
    s_list: list[np.ndarray] = []
    y_list: list[np.ndarray] = []

    for iteration in range(1, max_iterations + 1):
        pg = pseudo_gradient(x, g, l1)
        result.grad_norm = float(np.abs(pg).max(initial=0.0))
        if result.grad_norm < tol:
            result.converged = True
            break

        d = -_two_loop(pg, s_list, y_list)
        if l1 > 0.0:
            d[d * -pg <= 0] = 0.0
        if not d.any():
            result.converged = True
            break
        orthant = np.sign(x)
        if l1 > 0.0:
            at_zero = orthant == 0
            orthant[at_zero] = np.sign(-pg[at_zero])

        alpha = 1.0 if s_list else min(1.0, 1.0 / float(np.linalg.norm(d)))
        accepted = False
        for _ in range(_MAX_BACKTRACKS):
            x_new = x + alpha * d
            if l1 > 0.0:
                x_new[x_new * orthant < 0] = 0.0
            f_new, g_new = fun(x_new)
            fx_new = f_new + l1 * float(np.abs(x_new).sum())
            if fx_new <= fx + _ARMIJO_C * float(np.dot(pg, x_new - x)):
                accepted = True
                break
            alpha *= _BACKTRACK
        if not accepted:
            break

        s = x_new - x
        y = g_new - g
        if float(np.dot(s, y)) > _CURVATURE_EPS:
            s_list.append(s)
            y_list.append(y)
            if len(s_list) > history_size:
                s_list.pop(0)
                y_list.pop(0)
        x, f, g, fx = x_new, f_new, g_new, fx_new
        result.iterations = iteration
        result.objective_history.append(fx)

    result.x = x
    result.fx = fx
    return result
