import sys

from msncap.cli import main

sys.exit(main())
