import sys

from holobeam.cli import main

sys.exit(main())
