"""
`pqm_tools` verification tests.
"""
