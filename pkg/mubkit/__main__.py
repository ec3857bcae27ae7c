import sys

from mubkit.commands import main

sys.exit(main())
