"""
Antipath Toolkit - Test Suite

Tests are grouped by area:

- graphs: graph representation, trit codes, text format, generators and peeling
- solvers: exact antipath/anticycle solvers and the rotation primitives
- verification: property checks, records, populations and campaigns
- integration: the command line end to end

test_acceptance_criteria.py runs the exhaustive n = 5 sweeps and the other
acceptance checks; it is the slowest suite.
"""
