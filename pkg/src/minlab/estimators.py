"""scikit-learn style wrappers so the schemes compose with pipelines and ``clone``.

``fit`` draws the random ordering (hash parameters or Gaussian filter) from
``random_state``; ``transform`` applies it to each input sequence. Inputs are
variable-length, so outputs are lists with one entry per sequence.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from minlab._checks import check_positive_int, check_sequences
from minlab.alphabet import DNA
from minlab.conv import conv_layer, maxpool_layer
from minlab.hashing import SCHEMES, make_ordering, new_gaussian_filter
from minlab.minimizers import TiePolicy, adjacent_share_rate, density, select_minimizers


def _seed(random_state) -> int:
    if random_state is None:
        return int(np.random.default_rng().integers(0, 2**63))
    if isinstance(random_state, np.random.Generator):
        return int(random_state.integers(0, 2**63))
    return int(random_state)


class MinimizerSampler(TransformerMixin, BaseEstimator):
    """Windowed k-mer selection under a random, Gaussian or lexicographic ordering.

    Parameters
    ----------
    k, w : int
        k-mer length and window size (in k-mers).
    scheme : {"random", "gaussian", "lex"}
    ties : {"leftmost", "rightmost", "prefer-previous"}
    alphabet : Alphabet
    random_state : int, numpy Generator or None

    Attributes
    ----------
    ordering_ : KmerOrdering
    seed_ : int
    """

    def __init__(self, k=8, w=19, scheme="random", ties="leftmost", alphabet=DNA, random_state=None):
        self.k = k
        self.w = w
        self.scheme = scheme
        self.ties = ties
        self.alphabet = alphabet
        self.random_state = random_state

    def _validate_params(self):
        check_positive_int(self.k, "k")
        check_positive_int(self.w, "w")
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        TiePolicy(self.ties)

    def fit(self, X=None, y=None):
        self._validate_params()
        if X is not None:
            check_sequences(X, self.alphabet)
        self.seed_ = _seed(self.random_state)
        self.ordering_ = make_ordering(self.scheme, self.k, self.alphabet, self.seed_)
        return self

    def transform(self, X):
        """List of ``MinimizerSelection``, one per sequence."""
        check_is_fitted(self, "ordering_")
        return [select_minimizers(s, self.k, self.w, self.ordering_, self.ties)
                for s in check_sequences(X, self.alphabet)]

    def density(self, X) -> np.ndarray:
        return np.array([density(sel).density for sel in self.transform(X)])

    def adjacent_share_rate(self, X) -> np.ndarray:
        return np.array([adjacent_share_rate(sel) for sel in self.transform(X)])


class GaussianConvMaxPool(TransformerMixin, BaseEstimator):
    """One Gaussian-initialised filter over one-hot input followed by max-pooling.

    ``transform`` returns the pooled maxima per sequence; ``argmax_positions``
    gives the k-mer position behind each maximum.
    """

    def __init__(self, k=8, w=19, stride=1, ties="leftmost", alphabet=DNA, random_state=None):
        self.k = k
        self.w = w
        self.stride = stride
        self.ties = ties
        self.alphabet = alphabet
        self.random_state = random_state

    def fit(self, X=None, y=None):
        check_positive_int(self.k, "k")
        check_positive_int(self.w, "w")
        check_positive_int(self.stride, "stride")
        TiePolicy(self.ties)
        if X is not None:
            check_sequences(X, self.alphabet)
        self.seed_ = _seed(self.random_state)
        self.filter_ = new_gaussian_filter(self.alphabet.size * self.k, self.seed_)
        return self

    def _pool(self, X):
        check_is_fitted(self, "filter_")
        return [maxpool_layer(conv_layer(s, self.filter_, self.alphabet, self.k), self.w, self.stride, self.ties)
                for s in check_sequences(X, self.alphabet)]

    def transform(self, X):
        return [p.maxima for p in self._pool(X)]

    def argmax_positions(self, X):
        return [p.argmax for p in self._pool(X)]
