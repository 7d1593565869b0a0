"""
Taylor Domination Toolkit Scripts Package
Command line front end and acceptance suites
"""

__version__ = "1.0.0"
__description__ = "tdom command line and acceptance suites"

from .tdom import TdomCommands, main, run
from .verify import run_suites

__all__ = [
    'TdomCommands',
    'main',
    'run',
    'run_suites'
]
