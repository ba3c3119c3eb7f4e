"""
Solver Test Suite

Tests for the exact antipath, anticycle and directed path solvers, the
direction-pattern kernel, and the rotation primitives built on them.
"""
