"""Weighted least squares via QR of the sqrt-weight-scaled system.

Normal equations are deliberately avoided: indicator-heavy designs square
the condition number. Standard errors come from sigma^2 (X'WX)^-1 with the
residual variance estimated on n - k - 1 degrees of freedom.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, SingularDesignError, UndefinedMetricError
from .tdist import two_sided_p

RANK_TOL = 1e-10


@dataclass(frozen=True)
class FitResult:
    coefficients: np.ndarray
    std_errors: np.ndarray
    t_stats: np.ndarray
    p_values: np.ndarray
    r2: float
    adj_r2: float
    n: int
    k_predictors: int
    residuals: np.ndarray


def r2_weighted(y, fitted, w) -> float:
    """1 - weighted RSS / weighted TSS, with the weighted mean as baseline."""
    y = np.asarray(y, dtype=float)
    fitted = np.asarray(fitted, dtype=float)
    w = np.asarray(w, dtype=float)
    ybar = np.average(y, weights=w)
    tss = float(w @ (y - ybar) ** 2)
    if tss <= 0.0:
        raise UndefinedMetricError("response has zero weighted variance; R^2 undefined")
    rss = float(w @ (y - fitted) ** 2)
    return 1.0 - rss / tss


def adj_r2(r2: float, n: int, k: int) -> float:
    """Adjusted R^2 with k predictors excluding the intercept."""
    if n <= k + 1:
        raise InsufficientDataError(f"n={n} leaves no residual degrees of freedom with k={k}")
    return 1.0 - (1.0 - r2) * (n - 1) / (n - k - 1)


def delta_r2_bps(r2_base: float, r2_model: float) -> int:
    """R^2 difference in basis points, rounded to the nearest integer."""
    return round((r2_model - r2_base) * 10000.0)


def significance_stars(p: float) -> str:
    """Strict thresholds: *p<0.05, **p<0.01, ***p<0.001."""
    if p < 0.001:
        return "***"
    if p < 0.01:
        return "**"
    if p < 0.05:
        return "*"
    return ""


def fit(X, y, w, column_names=None) -> FitResult:
    """Minimize sum w_i (y_i - x_i beta)^2; X includes the intercept column."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    w = np.asarray(w, dtype=float)
    n, k_total = X.shape
    if n <= k_total:
        raise InsufficientDataError(f"n={n} observations for {k_total} parameters")

    sw = np.sqrt(w)
    Q, R = np.linalg.qr(sw[:, None] * X)
    diag = np.abs(np.diag(R))
    bad = np.flatnonzero(diag < RANK_TOL * diag.max())
    if bad.size:
        names = [column_names[i] if column_names else i for i in bad]
        raise SingularDesignError(names)

    beta = np.linalg.solve(R, Q.T @ (sw * y))
    residuals = y - X @ beta
    dof = n - k_total
    sigma2 = float(w @ residuals**2) / dof
    r_inv = np.linalg.solve(R, np.eye(k_total))
    cov = sigma2 * (r_inv @ r_inv.T)
    se = np.sqrt(np.diag(cov))
    t_stats = np.divide(beta, se, out=np.zeros_like(beta), where=se > 0)
    p_values = np.array([two_sided_p(t, dof) for t in t_stats])

    r2 = r2_weighted(y, X @ beta, w)
    return FitResult(
        coefficients=beta,
        std_errors=se,
        t_stats=t_stats,
        p_values=p_values,
        r2=r2,
        adj_r2=adj_r2(r2, n, k_total - 1),
        n=n,
        k_predictors=k_total - 1,
        residuals=residuals,
    )
