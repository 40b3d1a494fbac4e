import sys

from listbrooks.cli import main

sys.exit(main())
