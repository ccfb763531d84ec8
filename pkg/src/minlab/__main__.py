import sys

from minlab.cli import main

sys.exit(main())
