import sys

from zenoloop.cli import main

sys.exit(main())
