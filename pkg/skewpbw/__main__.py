import sys

from skewpbw.main import main

sys.exit(main())
