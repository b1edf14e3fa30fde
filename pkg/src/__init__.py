"""Commuting-subsets toolkit - Source Package."""
