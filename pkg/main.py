#!/usr/bin/env python3
"""Run the default convergence study; same as `manage.py convergence`."""
import sys

from manage import main

if __name__ == "__main__":
    sys.exit(main(["convergence", *sys.argv[1:]]))
