"""
Verification Test Suite

Tests for the per-graph property checks, the record format, graph
populations, the verify/search operations and the campaign runner.
"""
