"""Arrow's theorem and Sperner's lemma, side by side and executable."""

__version__ = "0.1.0"
