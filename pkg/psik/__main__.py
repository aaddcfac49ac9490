"""Entry point for `python -m psik`."""

import sys

from psik.cli import main

sys.exit(main())
