"""Allow ``python -m qmonty`` to behave like the ``qmonty`` script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
