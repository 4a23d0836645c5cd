"""
`pqm_cli` verification tests.
"""
