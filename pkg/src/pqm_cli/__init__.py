"""
Command line entry points for the `pqm_tools` library.
"""
