"""Exact push-out/pull-back amalgamation calculus at desk scale: finite
Boolean algebras under Stone duality, polytopal-norm spaces, iterated
push-out towers and back-and-forth isomorphism search."""

__version__ = "0.1.0"
