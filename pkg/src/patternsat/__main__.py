import sys

from patternsat.cli import main

sys.exit(main())
