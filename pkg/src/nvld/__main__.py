import sys

from nvld.cli import main

sys.exit(main())
