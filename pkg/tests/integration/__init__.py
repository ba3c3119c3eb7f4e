"""
Integration Test Suite

End-to-end tests of the command line: graph input, generators piped into
solvers, campaigns written to record files, and the exit-code contract.
"""
