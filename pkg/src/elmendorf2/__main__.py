import sys

from elmendorf2.cli import main

sys.exit(main())
