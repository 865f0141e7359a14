"""Tri-modal hate-speech detection pipeline.

Feature extraction for audio/image/text samples, from-scratch classical
classifiers, RFE/mRMR feature selection, and 2-of-3 hard-vote fusion.
"""

__version__ = "0.1.0"
