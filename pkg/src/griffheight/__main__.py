import sys

from griffheight.cli import main

sys.exit(main())
