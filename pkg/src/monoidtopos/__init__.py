"""Finitely presented monoids, their right actions, and the functors between
presheaf categories induced by a monoid morphism."""

__version__ = "0.1.0"
