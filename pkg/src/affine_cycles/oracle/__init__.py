"""Brute-force ground truth over prime fields: enumeration, rational forms, censuses."""
