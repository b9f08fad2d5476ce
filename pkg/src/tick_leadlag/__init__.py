"""tick-leadlag - High-frequency lead/lag measurement with the Hayashi-Yoshida estimator."""

__version__ = "0.1.0"
