"""Skip-gram with negative sampling over walk corpora.

Walks act as sentences and node indices as words.  Center/context pairs are
drawn with a per-center random window shrink, negatives come from the unigram
distribution raised to 3/4, and updates run as mini-batch SGD with a linearly
decaying learning rate.  All randomness flows from one seeded generator and
every accumulation uses a fixed summation order, so training is bitwise
reproducible for a given (corpus, hyperparameters, seed).

Virtual attribute tokens train like any other token but only real-node rows
are returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np


@dataclass(frozen=True)
class EmbeddingMatrix:
    """One vector per real node; ``uncovered`` lists nodes absent from every walk."""

    vectors: np.ndarray
    uncovered: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def to_json(self, names: Iterable[str]) -> str:
        vectors = {
            name: [float(x) for x in row] for name, row in zip(names, self.vectors)
        }
        return json.dumps({"dim": self.dim, "vectors": vectors})

    def to_text(self, names: Iterable[str]) -> str:
        lines = [
            " ".join([name] + [repr(float(x)) for x in row])
            for name, row in zip(names, self.vectors)
        ]
        return "\n".join(lines)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30.0, 30.0)))


def _onehot(idx: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros((len(idx), width), dtype=np.float32)
    out[np.arange(len(idx)), idx] = 1.0
    return out


def _epoch_pairs(
    corpus_flat: np.ndarray,
    walk_pos: np.ndarray,
    walk_len: np.ndarray,
    window: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """(center, context) token pairs for one epoch with random window shrink."""
    n = len(corpus_flat)
    shrink = rng.integers(1, window + 1, size=n)
    centers = []
    contexts = []
    for off in range(-window, window + 1):
        if off == 0:
            continue
        target = walk_pos + off
        mask = (np.abs(off) <= shrink) & (target >= 0) & (target < walk_len)
        src = np.flatnonzero(mask)
        centers.append(corpus_flat[src])
        contexts.append(corpus_flat[src + off])
    return np.concatenate(centers), np.concatenate(contexts)


def train_skipgram(
    corpus,
    dim: int = 64,
    window: int = 5,
    negatives: int = 5,
    epochs: int = 5,
    learning_rate: float = 0.025,
    seed: int = 0,
    batch_size: int = 512,
) -> EmbeddingMatrix:
    """Train token vectors on a walk corpus and return the real-node rows.

    Negative-sampling SGD over (center, context) pairs, mini-batched.  Each
    batch scores its centers against the whole vocabulary (the vocabularies
    here are node sets, small enough that dense matmuls beat gather/scatter)
    and applies, per parameter row, the mean gradient of the draws touching
    it; averaging rather than summing keeps the step size independent of how
    often a token recurs within the batch, which is what makes the update
    stable on vocabularies this small.  Tokens that never occur keep an
    all-zero vector and real ones among them are reported via
    ``EmbeddingMatrix.uncovered``.
    """
    if not corpus.walks:
        raise ValueError("corpus is empty")
    if dim < 2:
        raise ValueError("dim must be >= 2")
    if window < 1:
        raise ValueError("window must be >= 1")
    if negatives < 1:
        raise ValueError("negatives must be >= 1")
    if epochs < 1:
        raise ValueError("epochs must be >= 1")
    if batch_size < 1:
        raise ValueError("batch_size must be >= 1")

    rng = np.random.default_rng(np.random.SeedSequence([seed]))
    n_tokens = corpus.n_tokens
    counts = corpus.token_counts()

    # float32 keeps every matmul in the fast BLAS path; the update order is
    # fixed, so runs stay bitwise deterministic.
    w_in = ((rng.random((n_tokens, dim)) - 0.5) / dim).astype(np.float32)
    w_in[counts == 0] = 0.0
    w_out = np.zeros((n_tokens, dim), dtype=np.float32)

    noise = counts.astype(float) ** 0.75
    noise_cum = np.cumsum(noise)

    corpus_flat = np.concatenate(corpus.walks)
    lengths = np.array([len(w) for w in corpus.walks])
    walk_pos = np.concatenate([np.arange(n) for n in lengths])
    walk_len = np.repeat(lengths, lengths)

    epoch_pairs = [
        _epoch_pairs(corpus_flat, walk_pos, walk_len, window, rng)
        for _ in range(epochs)
    ]
    total_pairs = sum(len(c) for c, _ in epoch_pairs)
    # Small corpora produce few batches at the nominal size, too few mean
    # updates to converge; shrink the batch until each epoch gets at least
    # ~200 steps.
    per_epoch = max(1, total_pairs // max(epochs, 1))
    step = max(1, min(batch_size, per_epoch // 200 + 1))
    done = 0
    for centers, contexts in epoch_pairs:
        for lo in range(0, len(centers), step):
            c = centers[lo : lo + step]
            t = contexts[lo : lo + step]
            b = len(c)
            rows = np.arange(b)
            draws = rng.random((b, negatives)) * noise_cum[-1]
            negs = np.searchsorted(noise_cum, draws, side="right")

            # Draws per (pair, token): the 1 positive plus sampled negatives.
            flat = (rows[:, None] * n_tokens + negs).ravel()
            drawn = np.bincount(flat, minlength=b * n_tokens)
            drawn = drawn.reshape(b, n_tokens).astype(np.float32)
            drawn[rows, t] += 1.0

            v_c = w_in[c]  # (b, d)
            sig = _sigmoid(v_c @ w_out.T)  # (b, V)
            coef = drawn * sig  # summed (sigma - label) per (pair, token)
            coef[rows, t] -= 1.0

            lr = np.float32(learning_rate * max(1.0 - done / total_pairs, 1e-4))
            pair_grad = coef @ w_out  # (b, d), summed over each pair's draws
            center_hot = _onehot(c, n_tokens)
            center_counts = np.maximum(center_hot.sum(axis=0), 1.0)
            out_sums = coef.T @ v_c  # (V, d)
            out_counts = np.maximum(drawn.sum(axis=0), 1.0)
            w_in -= lr * (center_hot.T @ pair_grad) / center_counts[:, None]
            w_out -= lr * out_sums / out_counts[:, None]
            done += b

    uncovered = tuple(int(i) for i in np.flatnonzero(counts[: corpus.n_real] == 0))
    return EmbeddingMatrix(w_in[: corpus.n_real].copy(), uncovered)
