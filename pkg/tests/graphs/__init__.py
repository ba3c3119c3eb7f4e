"""
Graph Test Suite

Tests for the oriented graph representation, its codes and text format,
and the graph family generators.
"""
