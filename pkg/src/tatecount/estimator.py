"""scikit-learn style wrapper around exact counting-polynomial fitting."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .analysis import NO_POLYNOMIAL_FIT, check_points, fit_polynomial
from .lefschetz import eval_at


def _as_q(X) -> list[int]:
    arr = np.asarray(X, dtype=object)
    if arr.ndim == 2:
        if arr.shape[1] != 1:
            raise ValueError(f"expected a single feature column (q), got shape {arr.shape}")
        arr = arr[:, 0]
    elif arr.ndim != 1:
        raise ValueError(f"expected 1-d or (n, 1) input, got shape {arr.shape}")
    out = []
    for v in arr:
        if isinstance(v, (float, np.floating)):
            if v != int(v):
                raise ValueError(f"field sizes must be integers, got {v}")
            v = int(v)
        out.append(int(v))
    return out


class CountingPolynomialRegressor(RegressorMixin, BaseEstimator):
    """Fit q -> #X(F_q) by exact interpolation with held-out validation.

    ``max_degree=None`` uses ``len(points) - 2`` so that one point is always
    held out.  Counts must be exact (ints or Fractions); after ``fit`` the
    attributes ``verdict_``, ``coef_`` and ``fitted_class_`` are set.
    """

    def __init__(self, max_degree: int | None = None):
        self.max_degree = max_degree

    def fit(self, X, y):
        qs = _as_q(X)
        ys = list(np.asarray(y, dtype=object).ravel())
        if len(qs) != len(ys):
            raise ValueError(f"X has {len(qs)} rows but y has {len(ys)}")
        pts = check_points(zip(qs, ys))
        deg = len(pts) - 2 if self.max_degree is None else self.max_degree
        self.verdict_ = fit_polynomial(pts, deg)
        self.fitted_class_ = self.verdict_.fitted
        self.coef_ = None if self.fitted_class_ is None else self.fitted_class_.coefficients()
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        if not hasattr(self, "verdict_"):
            raise NotFittedError("call fit first")
        if self.verdict_.status == NO_POLYNOMIAL_FIT:
            raise ValueError("data admits no polynomial fit; nothing to predict")
        return np.array([eval_at(self.fitted_class_, q) for q in _as_q(X)], dtype=object)

    def score(self, X, y, sample_weight=None):
        """Fraction of points predicted exactly."""
        pred = self.predict(X)
        truth = [Fraction(v) for v in np.asarray(y, dtype=object).ravel()]
        return sum(a == b for a, b in zip(pred, truth)) / len(truth)
