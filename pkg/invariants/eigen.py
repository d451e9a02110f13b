"""
Циклічний метод Якобі для щільних симетричних матриць.

Ротації застосовуються до пар рядків/стовпців через numpy; критерій зупинки:
норма Фробеніуса позадіагональної частини ≤ tol·max(1, ‖A‖_F).
Детермінований: однаковий вхід дає однаковий вихід.
"""
from __future__ import annotations

import numpy as np
from loguru import logger

from cli.config import get_settings
from invariants.errors import GraphValidationError, NumericalError


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_eigh(
    matrix: np.ndarray,
    tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Повертає (eigenvalues за зростанням, eigenvectors по стовпцях).

    Кидає NumericalError, якщо за max_sweeps проходів не досягнуто порогу.
    """
    settings = get_settings()
    tol = settings.jacobi_tol if tol is None else tol
    max_sweeps = settings.jacobi_max_sweeps if max_sweeps is None else max_sweeps

    a = np.array(matrix, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphValidationError(f"Jacobi expects a square matrix, got shape {a.shape}")
    n = a.shape[0]
    v = np.eye(n, dtype=np.float64)
    if n < 2:
        return np.diag(a).copy(), v

    threshold = tol * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps + 1):
        off = _off_norm(a)
        if off <= threshold:
            logger.debug(f"Jacobi converged: n={n} sweeps={sweep} off={off:.3e}")
            order = np.argsort(np.diag(a), kind="stable")
            return np.diag(a)[order].copy(), v[:, order]
        if sweep == max_sweeps:
            break

        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0.0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                # A ← Pᵀ A P, спочатку стовпці, потім рядки
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0

                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vec_p - s * vec_q
                v[:, q] = s * vec_p + c * vec_q

    raise NumericalError(f"Jacobi did not converge within {max_sweeps} sweeps (n={n})")
