"""Run the cardiodyn command line from a source checkout: ``python main.py <command> ...``."""

import sys

from services.pipeline.cli import main

if __name__ == "__main__":
    sys.exit(main())
