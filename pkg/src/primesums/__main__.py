import sys

from primesums.cli import main

sys.exit(main())
