import sys

from koszul_calculus.cli import main

sys.exit(main())
