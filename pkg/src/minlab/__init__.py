"""Minimizer selection schemes and their Gaussian convolution + max-pooling equivalent."""

__version__ = "0.1.0"

from minlab.alphabet import (  # noqa: E402
    DNA, GAP, Alphabet, Kmer, OneHotVector, Sequence, kmer_rank, kmers, one_hot, parse_sequence,
)
from minlab.conv import conv_layer, equivalence_check, maxpool_layer  # noqa: E402
from minlab.estimators import GaussianConvMaxPool, MinimizerSampler  # noqa: E402
from minlab.hashing import (  # noqa: E402
    GaussianFilter, GaussianOrdering, KmerOrdering, LexicographicOrdering, MultiplyShiftHasher,
    MultiplyShiftOrdering, ScoreOrdering, gaussian_score, hash_vector, make_ordering, new_gaussian_filter,
    new_multiply_shift,
)
from minlab.metrics import degree, distance_stats, hamming  # noqa: E402
from minlab.minimizers import (  # noqa: E402
    MinimizerSelection, TiePolicy, adjacent_share_rate, density, minhash_min, select_minimizers,
)
from minlab.simulation import RepeatSpec, tandem_repeat, uniform_random_sequence  # noqa: E402

__all__ = [
    "DNA", "GAP", "Alphabet", "Kmer", "OneHotVector", "Sequence", "kmer_rank", "kmers", "one_hot", "parse_sequence",
    "conv_layer", "equivalence_check", "maxpool_layer", "GaussianConvMaxPool", "MinimizerSampler",
    "GaussianFilter", "GaussianOrdering", "KmerOrdering", "LexicographicOrdering", "MultiplyShiftHasher",
    "MultiplyShiftOrdering", "ScoreOrdering", "gaussian_score", "hash_vector", "make_ordering",
    "new_gaussian_filter", "new_multiply_shift", "degree", "distance_stats", "hamming", "MinimizerSelection",
    "TiePolicy", "adjacent_share_rate", "density", "minhash_min", "select_minimizers", "RepeatSpec",
    "tandem_repeat", "uniform_random_sequence",
]
