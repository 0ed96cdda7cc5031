"""Linear classifiers over document features.

Two model families share :class:`LinearModel`:

* ``logistic`` -- L2-regularized logistic regression on standardized dense
  features (readability scores, surface counts, quality scores), fitted by
  full-batch gradient descent with a backtracking line search.
* ``svm_hinge`` -- a linear SVM on L2-normalized tf-idf bag-of-words
  vectors, fitted by plain SGD on the regularized hinge loss.
"""

from __future__ import annotations

import json
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .preprocess import TextStats
from .readability import SCORE_NAMES

LOGISTIC = "logistic"
SVM = "svm_hinge"

COUNT_NAMES = TextStats.FIELDS
QUALITY_NAMES = ("ads", "adsn")
FEATURE_NAMES = SCORE_NAMES + COUNT_NAMES + QUALITY_NAMES

PRESETS: Mapping[str, tuple[str, ...]] = MappingProxyType({
    "readability": SCORE_NAMES,
    "readability+counts": SCORE_NAMES + COUNT_NAMES,
    "quality": QUALITY_NAMES,
    "all": FEATURE_NAMES,
})

LABEL_VALUES = {"High": 1, "Low": 0}

SparseVector = Mapping[int, float]


class SingleClass(ValueError):
    pass


class NonFinite(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class TooSmall(ValueError):
    pass


@dataclass(frozen=True)
class FeatureVector:
    doc_id: str
    names: tuple[str, ...]
    values: tuple[float, ...]
    label: Optional[int] = None

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise DimensionMismatch("names and values differ in length")

    def select(self, names: Sequence[str]) -> "FeatureVector":
        index = {n: i for i, n in enumerate(self.names)}
        try:
            vals = tuple(self.values[index[n]] for n in names)
        except KeyError as exc:
            raise DimensionMismatch(f"feature {exc.args[0]!r} not present") from None
        return FeatureVector(self.doc_id, tuple(names), vals, self.label)


def preset_features(preset: str) -> tuple[str, ...]:
    try:
        return PRESETS[preset]
    except KeyError:
        raise ValueError(f"unknown feature preset {preset!r}; choose from {sorted(PRESETS)}") from None


# -- splitting --------------------------------------------------------------


def train_test_split(items: Sequence, test_fraction: float = 0.2, seed: int = 42):
    """Seeded shuffle, then the first ``ceil(n * (1 - f))`` items train."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must lie strictly between 0 and 1")
    n = len(items)
    if n < 2:
        raise TooSmall("need at least two items to split")
    order = list(range(n))
    random.Random(seed).shuffle(order)
    n_train = math.ceil(n * (1.0 - test_fraction) - 1e-9)
    n_train = min(max(n_train, 1), n - 1)
    return [items[i] for i in order[:n_train]], [items[i] for i in order[n_train:]]


# -- model ------------------------------------------------------------------


@dataclass(frozen=True)
class LinearModel:
    kind: str
    feature_names: tuple[str, ...]
    weights: tuple[float, ...]
    bias: float
    means: tuple[float, ...]
    stddevs: tuple[float, ...]
    config: Mapping = field(default_factory=dict)
    vocab: Optional["TfidfVocab"] = None

    def __post_init__(self):
        d = len(self.feature_names)
        if not (len(self.weights) == len(self.means) == len(self.stddevs) == d):
            raise DimensionMismatch("weight/standardization length differs from feature count")

    @property
    def dropped(self) -> tuple[str, ...]:
        """Features that were constant at fit time and carry no weight."""
        return tuple(n for n, s in zip(self.feature_names, self.stddevs) if s == 0)


def _standardize(X: np.ndarray, means: np.ndarray, stds: np.ndarray) -> np.ndarray:
    safe = np.where(stds > 0, stds, 1.0)
    Z = (X - means) / safe
    Z[:, stds == 0] = 0.0
    return Z


def decision_function(model: LinearModel, x) -> float:
    """Raw linear score ``w . standardized(x) + b``.

    ``x`` may be a :class:`FeatureVector` (names are checked), a dense
    sequence in model order, or a sparse ``{index: value}`` mapping.
    """
    w = model.weights
    if isinstance(x, Mapping):
        d = len(w)
        total = 0.0
        for j, v in x.items():
            if not 0 <= j < d:
                raise DimensionMismatch(f"sparse index {j} outside 0..{d - 1}")
            s = model.stddevs[j]
            if s > 0:
                total += w[j] * (v - model.means[j]) / s
        return total + model.bias
    if isinstance(x, FeatureVector):
        if x.names != model.feature_names:
            raise DimensionMismatch(f"features {x.names} do not match model {model.feature_names}")
        x = x.values
    if len(x) != len(w):
        raise DimensionMismatch(f"expected {len(w)} features, got {len(x)}")
    total = math.fsum(
        wj * (xj - mj) / sj
        for wj, xj, mj, sj in zip(w, x, model.means, model.stddevs)
        if sj > 0
    )
    return total + model.bias


_P_LO = math.nextafter(0.0, 1.0)
_P_HI = math.nextafter(1.0, 0.0)


def _sigmoid(z: float) -> float:
    if z >= 0:
        p = 1.0 / (1.0 + math.exp(-z))
    else:
        e = math.exp(z)
        p = e / (1.0 + e)
    return min(max(p, _P_LO), _P_HI)


def predict_score(model: LinearModel, x) -> float:
    """Probability of class 1 for logistic models, the margin for SVMs."""
    z = decision_function(model, x)
    return _sigmoid(z) if model.kind == LOGISTIC else z


def _labels(items) -> np.ndarray:
    y = []
    for it in items:
        if it.label not in (0, 1):
            raise ValueError(f"{it.doc_id}: training examples need a 0/1 label")
        y.append(it.label)
    return np.asarray(y, dtype=float)


def _check_classes(y: np.ndarray) -> None:
    if len(y) == 0 or y.min() == y.max():
        raise SingleClass("training data must contain both classes")


# -- logistic regression ----------------------------------------------------


@dataclass(frozen=True)
class LogisticConfig:
    l2: float = 1e-4
    max_iters: int = 5000
    tol: float = 1e-6


def logistic_objective(w: np.ndarray, b: float, Z: np.ndarray, y: np.ndarray, l2: float):
    """Mean negative log-likelihood plus ``l2/2 * |w|^2``, and its gradient.

    Returns ``(value, grad_w, grad_b)``.  The bias is not penalized.
    """
    z = Z @ w + b
    value = float(np.mean(np.logaddexp(0.0, z) - y * z) + 0.5 * l2 * np.dot(w, w))
    r = np.exp(-np.logaddexp(0.0, -z)) - y
    n = len(y)
    return value, Z.T @ r / n + l2 * w, float(np.sum(r) / n)


def _inf_norm(gw: np.ndarray, gb: float) -> float:
    return max(float(np.max(np.abs(gw))) if gw.size else 0.0, abs(gb))


@dataclass
class FitTrace:
    objective: list = field(default_factory=list)
    grad_norm: float = math.inf
    iterations: int = 0
    converged: bool = False


def fit_logistic_arrays(
    X: np.ndarray,
    y: np.ndarray,
    feature_names: Sequence[str],
    config: LogisticConfig = LogisticConfig(),
    trace: Optional[FitTrace] = None,
) -> LinearModel:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float)
    if X.ndim != 2 or X.shape[0] != len(y) or X.shape[1] != len(feature_names):
        raise DimensionMismatch("X must be (n_samples, n_features) matching labels and names")
    if not np.all(np.isfinite(X)):
        raise NonFinite("feature matrix contains NaN or infinity")
    _check_classes(y)

    means = X.mean(axis=0)
    stds = X.std(axis=0)
    # Columns constant up to rounding are dropped.
    stds = np.where(stds > 1e-12 * np.maximum(np.abs(means), 1.0), stds, 0.0)
    Z = _standardize(X, means, stds)

    w = np.zeros(X.shape[1])
    b = 0.0
    value, gw, gb = logistic_objective(w, b, Z, y, config.l2)
    trace = trace if trace is not None else FitTrace()
    trace.objective.append(value)
    step = 1.0
    for _ in range(config.max_iters):
        if _inf_norm(gw, gb) < config.tol:
            break
        sq = float(np.dot(gw, gw) + gb * gb)
        step = min(step * 2.0, 1e6)
        while step >= 1e-20:
            w_new, b_new = w - step * gw, b - step * gb
            v_new, gw_new, gb_new = logistic_objective(w_new, b_new, Z, y, config.l2)
            if v_new <= value - 1e-4 * step * sq:
                break
            step *= 0.5
        else:
            break  # no descent possible at float resolution
        w, b, value, gw, gb = w_new, b_new, v_new, gw_new, gb_new
        trace.objective.append(value)
    trace.iterations = len(trace.objective) - 1
    trace.grad_norm = _inf_norm(gw, gb)
    trace.converged = trace.grad_norm < config.tol
    w[stds == 0] = 0.0
    return LinearModel(
        kind=LOGISTIC,
        feature_names=tuple(feature_names),
        weights=tuple(float(v) for v in w),
        bias=float(b),
        means=tuple(float(v) for v in means),
        stddevs=tuple(float(v) for v in stds),
        config={"l2": config.l2, "max_iters": config.max_iters, "tol": config.tol},
    )


def fit_logistic(
    train: Sequence[FeatureVector],
    config: LogisticConfig = LogisticConfig(),
    trace: Optional[FitTrace] = None,
) -> LinearModel:
    if not train:
        raise SingleClass("empty training set")
    names = train[0].names
    for fv in train:
        if fv.names != names:
            raise DimensionMismatch(f"{fv.doc_id}: feature order differs within the dataset")
    X = np.array([fv.values for fv in train], dtype=float)
    return fit_logistic_arrays(X, _labels(train), names, config, trace)


# -- tf-idf -----------------------------------------------------------------


@dataclass(frozen=True)
class TfidfVocab:
    terms: Mapping[str, tuple[int, int]]
    n_docs: int

    def __post_init__(self):
        object.__setattr__(self, "terms", MappingProxyType(dict(self.terms)))

    def __reduce__(self):
        return (type(self), (dict(self.terms), self.n_docs))

    def __len__(self) -> int:
        return len(self.terms)

    def idf(self, term: str) -> float:
        _, df = self.terms[term]
        return math.log((1 + self.n_docs) / (1 + df)) + 1.0

    def names(self) -> tuple[str, ...]:
        out = [""] * len(self.terms)
        for t, (i, _) in self.terms.items():
            out[i] = t
        return tuple(out)


def tfidf_fit(streams: Sequence[Sequence[str]]) -> TfidfVocab:
    if not streams:
        raise TooSmall("tf-idf needs at least one document")
    df: Counter = Counter()
    for s in streams:
        df.update(set(s))
    terms = {t: (i, df[t]) for i, t in enumerate(sorted(df))}
    return TfidfVocab(terms, len(streams))


def tfidf_transform(vocab: TfidfVocab, stream: Sequence[str]) -> dict[int, float]:
    """Raw counts times smoothed idf, L2-normalized; unknown terms are ignored."""
    tf = Counter(t for t in stream if t in vocab.terms)
    raw = {vocab.terms[t][0]: n * vocab.idf(t) for t, n in tf.items()}
    norm = math.sqrt(math.fsum(v * v for v in raw.values()))
    if norm == 0:
        return {}
    return {j: raw[j] / norm for j in sorted(raw)}


# -- linear SVM by SGD ------------------------------------------------------


@dataclass(frozen=True)
class SGDConfig:
    alpha: float = 1e-4
    epochs: int = 20
    seed: int = 42


def _sgd_t0(alpha: float) -> float:
    # Leon Bottou's heuristic for the "optimal" schedule: pick t0 so the
    # first step equals a typical weight magnitude 1 / alpha**0.25.
    typw = math.sqrt(1.0 / math.sqrt(alpha))
    return 1.0 / (typw * alpha)


def fit_svm_sgd(
    X: Sequence[SparseVector],
    y: Sequence[int],
    n_features: int,
    config: SGDConfig = SGDConfig(),
    feature_names: Optional[Sequence[str]] = None,
    vocab: Optional[TfidfVocab] = None,
) -> LinearModel:
    """Minimize ``alpha/2 |w|^2 + mean(hinge)`` with step ``1 / (alpha (t + t0))``."""
    if len(X) != len(y):
        raise DimensionMismatch("X and y differ in length")
    labels = np.asarray([1.0 if v else -1.0 for v in y])
    if len(labels) == 0 or labels.min() == labels.max():
        raise SingleClass("training data must contain both classes")
    rows = [
        (np.fromiter(x.keys(), dtype=np.int64, count=len(x)),
         np.fromiter(x.values(), dtype=float, count=len(x)))
        for x in X
    ]
    v = np.zeros(n_features)
    scale = 1.0
    b = 0.0
    alpha = config.alpha
    t0 = _sgd_t0(alpha)
    t = 0
    rng = random.Random(config.seed)
    order = list(range(len(rows)))
    for _ in range(config.epochs):
        rng.shuffle(order)
        for i in order:
            idx, val = rows[i]
            yi = labels[i]
            eta = 1.0 / (alpha * (t0 + t))
            margin = yi * (scale * float(v[idx] @ val) + b)
            scale *= max(1.0 - eta * alpha, 1e-12)
            if margin < 1.0:
                v[idx] += (eta * yi / scale) * val
                b += eta * yi
            if scale < 1e-9:
                v *= scale
                scale = 1.0
            t += 1
    w = v * scale
    names = tuple(feature_names) if feature_names is not None else (
        vocab.names() if vocab is not None else tuple(f"x{j}" for j in range(n_features))
    )
    return LinearModel(
        kind=SVM,
        feature_names=names,
        weights=tuple(float(a) for a in w),
        bias=float(b),
        means=(0.0,) * n_features,
        stddevs=(1.0,) * n_features,
        config={"alpha": alpha, "epochs": config.epochs, "seed": config.seed},
        vocab=vocab,
    )


def fit_bag_of_words(streams: Sequence[Sequence[str]], y: Sequence[int], config: SGDConfig = SGDConfig()) -> LinearModel:
    vocab = tfidf_fit(streams)
    X = [tfidf_transform(vocab, s) for s in streams]
    return fit_svm_sgd(X, y, len(vocab), config, vocab=vocab)


# -- model files ------------------------------------------------------------

_MODEL_PREFIX = "# model "


class ModelFormatError(ValueError):
    pass


def save_model(model: LinearModel, path: Union[str, Path], extra: Optional[Mapping] = None) -> None:
    """TSV of ``feature, weight, mean, stddev`` (plus ``df`` for tf-idf models).

    The first line is a JSON header with kind, bias and fitting config.
    """
    header = {"kind": model.kind, "bias": model.bias, "config": dict(model.config)}
    if extra:
        header.update(extra)
    cols = ["feature", "weight", "mean", "stddev"]
    if model.vocab is not None:
        header["n_docs"] = model.vocab.n_docs
        cols.append("df")
    lines = [_MODEL_PREFIX + json.dumps(header, sort_keys=True), "\t".join(cols)]
    for j, name in enumerate(model.feature_names):
        row = [name, repr(model.weights[j]), repr(model.means[j]), repr(model.stddevs[j])]
        if model.vocab is not None:
            row.append(str(model.vocab.terms[name][1]))
        lines.append("\t".join(row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_model(path: Union[str, Path]) -> tuple[LinearModel, dict]:
    """Return the model and the full JSON header."""
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    if not lines or not lines[0].startswith(_MODEL_PREFIX):
        raise ModelFormatError(f"{path}:1: missing model header")
    try:
        header = json.loads(lines[0][len(_MODEL_PREFIX):])
    except ValueError as exc:
        raise ModelFormatError(f"{path}:1: bad model header: {exc}") from None
    cols = lines[1].split("\t") if len(lines) > 1 else []
    has_df = cols == ["feature", "weight", "mean", "stddev", "df"]
    if not has_df and cols != ["feature", "weight", "mean", "stddev"]:
        raise ModelFormatError(f"{path}:2: unexpected column header")
    names, w, mu, sd, terms = [], [], [], [], {}
    for lineno, line in enumerate(lines[2:], 3):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != len(cols):
            raise ModelFormatError(f"{path}:{lineno}: expected {len(cols)} fields")
        try:
            w.append(float(parts[1]))
            mu.append(float(parts[2]))
            sd.append(float(parts[3]))
            if has_df:
                terms[parts[0]] = (len(names), int(parts[4]))
        except ValueError:
            raise ModelFormatError(f"{path}:{lineno}: non-numeric field") from None
        names.append(parts[0])
    vocab = TfidfVocab(terms, int(header["n_docs"])) if has_df else None
    model = LinearModel(
        kind=header["kind"],
        feature_names=tuple(names),
        weights=tuple(w),
        bias=float(header["bias"]),
        means=tuple(mu),
        stddevs=tuple(sd),
        config=header.get("config", {}),
        vocab=vocab,
    )
    return model, header
