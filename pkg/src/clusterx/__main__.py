import sys

from clusterx.cli import main

sys.exit(main())
