"""
curvant: reinforcement-learning design of dipole antennas conformal to
conductive tubes, driven by an in-repo thin-wire method-of-moments solver.
"""

__version__ = "0.1.0"
