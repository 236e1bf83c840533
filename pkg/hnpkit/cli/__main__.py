import sys

import anyio

from hnpkit.cli.app import run

if __name__ == "__main__":
    sys.exit(anyio.run(run, sys.argv[1:]))
