"""
Taylor Domination Toolkit Test Suite
Test modules for series arithmetic, bounds, zero counting and the command line
"""
