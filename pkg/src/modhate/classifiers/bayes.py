"""Gaussian naive Bayes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from modhate.classifiers.base import Hyperparams, TrainedModel, check_training_matrix

VAR_SMOOTHING = 1e-9


@dataclass(frozen=True)
class NbParams:
    log_priors: np.ndarray   # (2,)
    means: np.ndarray        # (2, d)
    variances: np.ndarray    # (2, d), smoothed

    def log_posteriors(self, Z: np.ndarray) -> np.ndarray:
        out = np.empty((Z.shape[0], 2))
        for c in (0, 1):
            var = self.variances[c]
            ll = -0.5 * np.log(2.0 * np.pi * var) - (Z - self.means[c]) ** 2 / (2.0 * var)
            out[:, c] = self.log_priors[c] + ll.sum(axis=1)
        return out

    def decide(self, Z: np.ndarray) -> np.ndarray:
        lp = self.log_posteriors(Z)
        # strict comparison: posterior ties go to label 0
        return (lp[:, 1] > lp[:, 0]).astype(np.int64)


def train_nb(X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> TrainedModel:
    """Class priors plus per-feature Gaussian statistics.

    Variances are smoothed by 1e-9 times the largest per-feature variance
    of the whole training matrix.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    check_training_matrix(X, y, require_both_classes=True)
    n, d = X.shape
    smoothing = VAR_SMOOTHING * float(X.var(axis=0).max())

    log_priors = np.empty(2)
    means = np.empty((2, d))
    variances = np.empty((2, d))
    for c in (0, 1):
        rows = X[y == c]
        log_priors[c] = np.log(rows.shape[0] / n)
        means[c] = rows.mean(axis=0)
        # tiny absolute floor keeps the degenerate all-constant corpus finite
        variances[c] = np.maximum(rows.var(axis=0) + smoothing, 1e-300)

    return TrainedModel(
        algorithm="nb", hyperparams=hp, n_features=d,
        payload=NbParams(log_priors=log_priors, means=means, variances=variances),
    )
