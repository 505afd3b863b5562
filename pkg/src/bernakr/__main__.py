import sys

from bernakr.cli import main

sys.exit(main())
