import sys

from geomint.cli import main

sys.exit(main())
