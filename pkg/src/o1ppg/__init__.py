"""Optimal 1-embedded graphs on the projective plane.

Library and CLI for signed-rotation-system embeddings, matching
extendability, structural certificates (barrier cycles, odd weighted
regions, projective-bowties, cut shapes), and a theorem-audit harness over
exhaustively generated desk-scale instances.
"""

__version__ = "0.1.0"
