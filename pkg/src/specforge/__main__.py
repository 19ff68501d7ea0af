import sys

from specforge.main import main

sys.exit(main())
