import sys

from fourq.cli import main

sys.exit(main())
