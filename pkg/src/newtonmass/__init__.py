"""Polyhedral indicators, Newton polyhedra at infinity and Monge-Ampere mass bounds."""
