"""Analog joint source-channel coding over a MOSFET curve family.

Library layout:

- ``mosfet``    device model, level grid, encoder
- ``decoding``  slope-matching decoder with range-check correction
- ``channel``   FM tone over Rician fading + AWGN, FFT peak detection
- ``sources``   correlated sensor fields from six named distributions
- ``kde``       kernel density estimation and KLD-based source identification
- ``pipeline``  end-to-end Monte Carlo sweeps and block-averaged MSE
- ``power``     variable-step quantizer front-end and its power estimate
- ``experiments`` seeded experiment runners writing CSV + manifest
"""

__version__ = "0.1.0"
