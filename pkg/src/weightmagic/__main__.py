"""Allow ``python -m weightmagic``."""

import sys

from .cli import main

sys.exit(main())
