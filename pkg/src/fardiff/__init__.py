"""Far-difference representations: decompositions, summand statistics, growth constants and gaps."""
from .sequences import SequenceFamily, fixture
from .decomposer import SignedDecomposition, decompose, DecompositionFailure

__all__ = ["SequenceFamily", "fixture", "SignedDecomposition", "decompose", "DecompositionFailure"]
__version__ = "0.1.0"
