"""Dense-retrieval training pipeline: data refinement, staged training, evaluation."""

__version__ = "0.1.0"
