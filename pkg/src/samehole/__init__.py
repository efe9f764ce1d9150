"""Graphs whose holes all have the same length."""
