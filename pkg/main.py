#!/usr/bin/env python3
"""
Taylor Domination Toolkit
Entry point equivalent to the `tdom` console script
"""

import sys
from pathlib import Path

# Add the project root to Python path
sys.path.append(str(Path(__file__).parent))

from src.scripts.tdom import main

if __name__ == "__main__":
    sys.exit(main())
