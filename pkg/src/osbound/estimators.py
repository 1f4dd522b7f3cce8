"""scikit-learn style wrappers so the bounds drop into pipelines.

``OrderStatisticEnvelope`` maps evaluation points ``x`` to the columns
``(H_n(x), F(x), K_n(x))``; ``SampleMeanBounds`` maps rows of ``n`` sample
values to ``(X^L, mean, X^U)``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .distributions import Distribution, Empirical
from .majorization import uniform_weights, validate_weights, weight_sequence
from .order_statistics import MixtureSpec, bound_pair

__all__ = ["OrderStatisticEnvelope", "SampleMeanBounds"]


def _resolve_weights(weights, m, n):
    if weights is not None and m is not None:
        raise ValueError("give either weights or m, not both")
    if weights is not None:
        w = validate_weights(weights)
        if n is not None and w.n != n:
            raise ValueError(f"weights have length {w.n} but n={n}")
        return w
    if n is None:
        raise ValueError("n is required when weights are not given")
    return weight_sequence(n, m) if m is not None else uniform_weights(n)


class OrderStatisticEnvelope(TransformerMixin, BaseEstimator):
    """Lower/upper mixture envelopes of a CDF.

    Parameters
    ----------
    n : int, default=3
        Sample size of the order statistics. Ignored when ``weights`` is set.
    m : int or None, default=None
        Index into the weight sequence ``p(m)``. With neither ``m`` nor
        ``weights`` the weights are uniform and the envelopes collapse to F.
    weights : sequence of float or None
        Explicit nonincreasing weights summing to one.
    distribution : Distribution or None
        Reference distribution. When None, ``fit`` uses the empirical
        distribution of its single-column input.
    """

    def __init__(self, n=3, m=None, weights=None, distribution=None):
        self.n = n
        self.m = m
        self.weights = weights
        self.distribution = distribution

    def fit(self, X=None, y=None):
        if self.distribution is not None:
            if not isinstance(self.distribution, Distribution):
                raise TypeError(f"distribution must be a Distribution, got {type(self.distribution).__name__}")
            self.distribution_ = self.distribution
        else:
            X = check_array(X, ensure_2d=True)
            if X.shape[1] != 1:
                raise ValueError(f"expected a single feature column, got {X.shape[1]}")
            self.distribution_ = Empirical.from_sample(X[:, 0])
        n = None if self.weights is not None else self.n
        self.weights_ = _resolve_weights(self.weights, self.m, n)
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        check_is_fitted(self, "weights_")
        X = check_array(X)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single feature column, got {X.shape[1]}")
        x = X[:, 0]
        h, k = bound_pair(MixtureSpec(self.distribution_, self.weights_), x)
        return np.column_stack([h, self.distribution_.cdf(x), k])

    def get_feature_names_out(self, input_features=None):
        return np.array(["lower", "cdf", "upper"], dtype=object)


class SampleMeanBounds(TransformerMixin, BaseEstimator):
    """Weighted order-statistic bounds on the mean of each row.

    Each row of ``X`` is one sample of size ``n``. ``fit`` only fixes ``n``
    from the column count and builds the weights.
    """

    def __init__(self, m=None, weights=None):
        self.m = m
        self.weights = weights

    def fit(self, X, y=None):
        X = check_array(X)
        self.n_features_in_ = X.shape[1]
        n = None if self.weights is not None else X.shape[1]
        self.weights_ = _resolve_weights(self.weights, self.m, n)
        if self.weights_.n != X.shape[1]:
            raise ValueError(f"weights have length {self.weights_.n} but X has {X.shape[1]} columns")
        return self

    def transform(self, X):
        check_is_fitted(self, "weights_")
        X = check_array(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} columns, expected {self.n_features_in_}")
        x = np.sort(X, axis=1)
        w = self.weights_.array
        return np.column_stack([x @ w, x.mean(axis=1), x[:, ::-1] @ w])

    def get_feature_names_out(self, input_features=None):
        return np.array(["lower", "mean", "upper"], dtype=object)
