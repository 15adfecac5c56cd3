"""Exact arithmetic for a rank-6 Gaussian-integer Lorentzian lattice:
anti-involutions and their fixed lattices, Vinberg fundamental domains,
mod-2 invariants, order-two stabilizer elements, and the cuspidal cone
angle."""

__version__ = "0.1.0"
