"""Logistic regression and linear SVM, trained by deterministic (sub)gradient descent."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from modhate.classifiers.base import Hyperparams, TrainedModel, check_training_matrix


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


@dataclass(frozen=True)
class LogregParams:
    weights: np.ndarray
    bias: float
    loss_trace: tuple[float, ...]   # regularized log-loss per iteration, plus final

    def decide(self, Z: np.ndarray) -> np.ndarray:
        # p > 0.5 <=> score > 0; the p == 0.5 tie goes to label 0
        return (Z @ self.weights + self.bias > 0.0).astype(np.int64)


def train_logreg(X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> TrainedModel:
    """Full-batch gradient descent on L2-regularized log-loss, zero-initialized."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    check_training_matrix(X, y, require_both_classes=True)
    n, d = X.shape
    yf = y.astype(np.float64)

    w = np.zeros(d)
    b = 0.0
    trace = []
    for _ in range(hp.iterations):
        z = X @ w + b
        trace.append(float(np.mean(np.logaddexp(0.0, z) - yf * z) + 0.5 * hp.l2 * (w @ w)))
        g = _sigmoid(z) - yf
        w -= hp.learning_rate * (X.T @ g / n + hp.l2 * w)
        b -= hp.learning_rate * float(g.mean())
    z = X @ w + b
    trace.append(float(np.mean(np.logaddexp(0.0, z) - yf * z) + 0.5 * hp.l2 * (w @ w)))

    return TrainedModel(
        algorithm="logreg", hyperparams=hp, n_features=d,
        payload=LogregParams(weights=w, bias=b, loss_trace=tuple(trace)),
    )


@dataclass(frozen=True)
class SvmParams:
    weights: np.ndarray
    bias: float

    def decide(self, Z: np.ndarray) -> np.ndarray:
        # sign of the score; zero goes to label 0
        return (Z @ self.weights + self.bias > 0.0).astype(np.int64)


def train_svm(X: np.ndarray, y: np.ndarray, hp: Hyperparams) -> TrainedModel:
    """Pegasos-style subgradient descent on hinge loss + L2.

    Samples are visited in fixed order; update t uses step 1/(l2*t) for the
    weights and 1/t for the unregularized bias.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.int64)
    check_training_matrix(X, y, require_both_classes=True)
    n, d = X.shape
    yy = 2.0 * y.astype(np.float64) - 1.0

    w = np.zeros(d)
    b = 0.0
    t = 0
    for _ in range(hp.epochs):
        for i in range(n):
            t += 1
            violated = yy[i] * (X[i] @ w + b) < 1.0
            w *= 1.0 - 1.0 / t   # L2 shrink: (1 - eta*l2) with eta = 1/(l2*t)
            if violated:
                w += (1.0 / (hp.l2 * t)) * yy[i] * X[i]
                b += (1.0 / t) * yy[i]

    return TrainedModel(
        algorithm="svm", hyperparams=hp, n_features=d,
        payload=SvmParams(weights=w, bias=b),
    )


def hinge_violations(model: TrainedModel, X: np.ndarray, y: np.ndarray) -> int:
    """Number of training points with margin < 1 under the fitted weights."""
    p = model.payload
    yy = 2.0 * np.asarray(y, dtype=np.float64) - 1.0
    margins = yy * (np.asarray(X, dtype=np.float64) @ p.weights + p.bias)
    return int(np.count_nonzero(margins < 1.0))
