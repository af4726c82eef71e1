"""Exact computer algebra for pullback symmetries of linear differential
operators: Schwarzian conditions, Calabi-Yau structure tests, series
solvers, mirror maps and nome/Yukawa pipelines."""

__version__ = "0.1.0"
