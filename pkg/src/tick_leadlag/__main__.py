import sys

from tick_leadlag.cli import main

sys.exit(main())
