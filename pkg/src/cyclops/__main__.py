import sys

from cyclops.cli import main

sys.exit(main())
