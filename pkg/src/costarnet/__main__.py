"""Allow ``python -m costarnet``."""

import sys

from .cli import main

sys.exit(main())
