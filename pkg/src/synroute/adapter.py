"""Complexity scorer: a small MLP with input/output feature gates and
residual hidden connections, trained on disagreement samples.

Forward pass, for input x of dimension d:

    g   = sigmoid(Wg x + bg)          elementwise input gate
    h0  = g * x
    hi  = relu(Wi h_{i-1} + bi) [+ h_{i-1} when widths match]
    og  = sigmoid(Wo hL + bo)         elementwise output gate
    o   = og * hL
    logit = wh . o + bh
    s   = sigmoid(logit)

Training minimizes mean BCE-with-logits on label-smoothed targets
y' = y(1-e) + (1-y)e with full-batch AdamW (decoupled weight decay on all
parameters) under a cosine-annealed learning rate. Everything is float64
and seeded, so identical configs reproduce bit-identical models.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimMismatchError,
    EmptyDataError,
    LengthMismatchError,
    MissingFileError,
    SingleClassError,
    VersionMismatchError,
)

MODEL_FORMAT = "synroute-adapter"
MODEL_VERSION = 1


@dataclass(frozen=True)
class AdapterConfig:
    input_dim: int
    hidden_dims: tuple[int, ...] = (256, 128, 64)
    label_smoothing: float = 0.1
    lr: float = 1e-3
    weight_decay: float = 1e-2
    epochs: int = 200
    seed: int = 0

    def __post_init__(self):
        if not (0 <= self.label_smoothing < 0.5):
            raise ValueError("label_smoothing must lie in [0, 0.5)")
        if self.input_dim < 1 or any(h < 1 for h in self.hidden_dims):
            raise ValueError("dimensions must be positive")


@dataclass(frozen=True)
class TrainingSample:
    x: np.ndarray
    y: int


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _param_names(cfg: AdapterConfig) -> list[str]:
    names = ["gate_in_w", "gate_in_b"]
    for i in range(len(cfg.hidden_dims)):
        names += [f"hidden{i}_w", f"hidden{i}_b"]
    names += ["gate_out_w", "gate_out_b", "head_w", "head_b"]
    return names


class AdapterModel:
    """Parameter container with the forward/backward passes."""

    def __init__(self, config: AdapterConfig, params: dict[str, np.ndarray]):
        self.config = config
        self.params = {k: np.asarray(v, dtype=np.float64) for k, v in params.items()}
        self._check_shapes()

    def _check_shapes(self):
        cfg = self.config
        d = cfg.input_dim
        expect: dict[str, tuple[int, ...]] = {
            "gate_in_w": (d, d), "gate_in_b": (d,),
        }
        prev = d
        for i, h in enumerate(cfg.hidden_dims):
            expect[f"hidden{i}_w"] = (h, prev)
            expect[f"hidden{i}_b"] = (h,)
            prev = h
        expect["gate_out_w"] = (prev, prev)
        expect["gate_out_b"] = (prev,)
        expect["head_w"] = (prev,)
        expect["head_b"] = (1,)
        for name, shape in expect.items():
            if name not in self.params:
                raise DimMismatchError(f"missing parameter {name}")
            if self.params[name].shape != shape:
                raise DimMismatchError(
                    f"{name}: expected shape {shape}, got {self.params[name].shape}")

    @classmethod
    def initialize(cls, cfg: AdapterConfig) -> "AdapterModel":
        rng = np.random.default_rng(cfg.seed)
        params: dict[str, np.ndarray] = {}
        d = cfg.input_dim
        params["gate_in_w"] = rng.normal(0.0, math.sqrt(2.0 / d), (d, d))
        params["gate_in_b"] = np.zeros(d)
        prev = d
        for i, h in enumerate(cfg.hidden_dims):
            params[f"hidden{i}_w"] = rng.normal(0.0, math.sqrt(2.0 / prev), (h, prev))
            params[f"hidden{i}_b"] = np.zeros(h)
            prev = h
        params["gate_out_w"] = rng.normal(0.0, math.sqrt(2.0 / prev), (prev, prev))
        params["gate_out_b"] = np.zeros(prev)
        params["head_w"] = rng.normal(0.0, math.sqrt(2.0 / prev), (prev,))
        params["head_b"] = np.zeros(1)
        return cls(cfg, params)

    def _forward(self, X: np.ndarray) -> dict:
        p = self.params
        cache: dict = {"X": X}
        u = X @ p["gate_in_w"].T + p["gate_in_b"]
        g = _sigmoid(u)
        h = g * X
        cache["g"] = g
        hs = [h]
        zs = []
        residuals = []
        prev_dim = self.config.input_dim
        for i, width in enumerate(self.config.hidden_dims):
            z = hs[-1] @ p[f"hidden{i}_w"].T + p[f"hidden{i}_b"]
            r = np.maximum(z, 0.0)
            use_res = width == prev_dim
            h_out = r + hs[-1] if use_res else r
            zs.append(z)
            residuals.append(use_res)
            hs.append(h_out)
            prev_dim = width
        v = hs[-1] @ p["gate_out_w"].T + p["gate_out_b"]
        og = _sigmoid(v)
        o = og * hs[-1]
        logit = o @ p["head_w"] + p["head_b"][0]
        cache.update(hs=hs, zs=zs, residuals=residuals, og=og, o=o, logit=logit)
        return cache

    def logits(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.config.input_dim:
            raise DimMismatchError(
                f"expected (n, {self.config.input_dim}) inputs, got {X.shape}")
        return self._forward(X)["logit"]

    def scores(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.logits(X))


def forward_score(model: AdapterModel, x: np.ndarray) -> tuple[float, float]:
    """Logit and sigmoid score for a single feature vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (model.config.input_dim,):
        raise DimMismatchError(
            f"expected vector of length {model.config.input_dim}, got {x.shape}")
    logit = float(model.logits(x[None, :])[0])
    return logit, float(_sigmoid(np.array([logit]))[0])


def build_disagreement_set(z_rag, z_gr, feats) -> list[TrainingSample]:
    """Keep queries where exactly one retriever was correct.

    The label is 1 when the graph side was the correct one.
    """
    if not (len(z_rag) == len(z_gr) == len(feats)):
        raise LengthMismatchError(
            f"lengths differ: {len(z_rag)}, {len(z_gr)}, {len(feats)}")
    samples = []
    for zr, zg, x in zip(z_rag, z_gr, feats):
        if int(zr) ^ int(zg):
            samples.append(TrainingSample(x=np.asarray(x, dtype=np.float64), y=int(zg)))
    return samples


def smoothed_targets(y: np.ndarray, eps: float) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    return y * (1.0 - eps) + (1.0 - y) * eps


def bce_with_logits(logits: np.ndarray, targets: np.ndarray) -> float:
    z, t = logits, targets
    per = np.maximum(z, 0.0) - z * t + np.log1p(np.exp(-np.abs(z)))
    return float(per.mean())


def loss_and_grads(model: AdapterModel, X: np.ndarray, y) -> tuple[float, dict[str, np.ndarray]]:
    """Mean smoothed-BCE loss and its analytic parameter gradients."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    p = model.params
    cache = model._forward(X)
    targets = smoothed_targets(y, model.config.label_smoothing)
    logit = cache["logit"]
    loss = bce_with_logits(logit, targets)

    grads = {k: np.zeros_like(v) for k, v in p.items()}
    dlogit = (_sigmoid(logit) - targets) / n  # (n,)

    o, og = cache["o"], cache["og"]
    hs, zs, residuals = cache["hs"], cache["zs"], cache["residuals"]
    hL = hs[-1]

    grads["head_w"] = o.T @ dlogit
    grads["head_b"] = np.array([dlogit.sum()])
    dO = dlogit[:, None] * p["head_w"][None, :]
    dOG = dO * hL
    dHL = dO * og
    dV = dOG * og * (1.0 - og)
    grads["gate_out_w"] = dV.T @ hL
    grads["gate_out_b"] = dV.sum(axis=0)
    dHL = dHL + dV @ p["gate_out_w"]

    dH = dHL
    for i in reversed(range(len(model.config.hidden_dims))):
        dZ = dH * (zs[i] > 0)
        grads[f"hidden{i}_w"] = dZ.T @ hs[i]
        grads[f"hidden{i}_b"] = dZ.sum(axis=0)
        dH_prev = dZ @ p[f"hidden{i}_w"]
        if residuals[i]:
            dH_prev = dH_prev + dH
        dH = dH_prev

    g = cache["g"]
    dG = dH * X
    dU = dG * g * (1.0 - g)
    grads["gate_in_w"] = dU.T @ X
    grads["gate_in_b"] = dU.sum(axis=0)
    return loss, grads


def train(cfg: AdapterConfig, data: list[TrainingSample]) -> AdapterModel:
    """Full-batch AdamW with cosine-annealed learning rate."""
    if not data:
        raise EmptyDataError("no training samples")
    labels = {s.y for s in data}
    if labels != {0, 1}:
        raise SingleClassError(f"need both classes, got {sorted(labels)}")
    X = np.stack([s.x for s in data]).astype(np.float64)
    y = np.array([s.y for s in data], dtype=np.float64)
    if X.shape[1] != cfg.input_dim:
        raise DimMismatchError(
            f"samples have dimension {X.shape[1]}, config says {cfg.input_dim}")

    model = AdapterModel.initialize(cfg)
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    m = {k: np.zeros_like(v) for k, v in model.params.items()}
    v = {k: np.zeros_like(vv) for k, vv in model.params.items()}
    step = 0
    for epoch in range(cfg.epochs):
        lr_t = cfg.lr * (1.0 + math.cos(math.pi * epoch / cfg.epochs)) / 2.0
        _, grads = loss_and_grads(model, X, y)
        step += 1
        for k in model.params:
            m[k] = beta1 * m[k] + (1.0 - beta1) * grads[k]
            v[k] = beta2 * v[k] + (1.0 - beta2) * grads[k] ** 2
            m_hat = m[k] / (1.0 - beta1 ** step)
            v_hat = v[k] / (1.0 - beta2 ** step)
            model.params[k] -= lr_t * (m_hat / (np.sqrt(v_hat) + eps)
                                       + cfg.weight_decay * model.params[k])
    return model


def adamw_step(model: AdapterModel, X, y, lr: float, weight_decay: float = 0.0) -> float:
    """One AdamW step from fresh moments; returns the pre-step loss."""
    loss, grads = loss_and_grads(model, np.asarray(X), np.asarray(y))
    for k in model.params:
        m_hat = grads[k]  # first step: m_hat = g, v_hat = g^2
        v_hat = grads[k] ** 2
        model.params[k] -= lr * (m_hat / (np.sqrt(v_hat) + 1e-8)
                                 + weight_decay * model.params[k])
    return loss


def gradient_check(model: AdapterModel, x: np.ndarray, y: int,
                   step: float = 1e-5) -> float:
    """Max relative error of analytic vs central finite-difference gradients."""
    x = np.asarray(x, dtype=np.float64)
    X = x[None, :]
    ys = np.array([y], dtype=np.float64)
    _, grads = loss_and_grads(model, X, ys)
    worst = 0.0
    for name, param in model.params.items():
        flat = param.ravel()
        analytic = grads[name].ravel()
        for idx in range(flat.size):
            orig = flat[idx]
            flat[idx] = orig + step
            lp, _ = loss_and_grads(model, X, ys)
            flat[idx] = orig - step
            lm, _ = loss_and_grads(model, X, ys)
            flat[idx] = orig
            numeric = (lp - lm) / (2.0 * step)
            denom = max(abs(analytic[idx]), abs(numeric), 1e-6)
            worst = max(worst, abs(analytic[idx] - numeric) / denom)
    return worst


def save_model(model: AdapterModel, path: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    cfg = model.config
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "config": {
            "input_dim": cfg.input_dim,
            "hidden_dims": list(cfg.hidden_dims),
            "label_smoothing": cfg.label_smoothing,
            "lr": cfg.lr,
            "weight_decay": cfg.weight_decay,
            "epochs": cfg.epochs,
            "seed": cfg.seed,
        },
        "params": {k: model.params[k].tolist() for k in _param_names(cfg)},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)


def load_model(path: str) -> AdapterModel:
    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise VersionMismatchError(f"unreadable model file: {exc}") from None
    if payload.get("format") != MODEL_FORMAT or payload.get("version") != MODEL_VERSION:
        raise VersionMismatchError("unrecognized model format or version")
    c = payload["config"]
    cfg = AdapterConfig(input_dim=int(c["input_dim"]),
                        hidden_dims=tuple(int(h) for h in c["hidden_dims"]),
                        label_smoothing=float(c["label_smoothing"]),
                        lr=float(c["lr"]), weight_decay=float(c["weight_decay"]),
                        epochs=int(c["epochs"]), seed=int(c["seed"]))
    params = {k: np.asarray(v, dtype=np.float64) for k, v in payload["params"].items()}
    return AdapterModel(cfg, params)
