"""
tnn-cluster - unsupervised time-series clustering with a Temporal Neural Network.

Signals are reduced by a sparse ternary random projection, turned into spike
times by Gaussian receptive fields, and clustered by a single column of
ramp-no-leak neurons with 1-winner-take-all inhibition, trained online with
stochastic integer STDP.
"""

__version__ = "1.0.0"

from .config.settings import TnnConfig, ValidatedConfig, validate
from .data.loader import Dataset, load_ucr
from .pipeline.trainer import TrainedModel, predict, train

__all__ = ["Dataset", "TnnConfig", "TrainedModel", "ValidatedConfig", "load_ucr", "predict", "train", "validate", "__version__"]
