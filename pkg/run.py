"""
Script to run the command-line tool.
"""
import sys

from app import logger
from app.cli.main import main as cli_main
from app.config.settings import settings


def main() -> int:
    """Run one CLI command with the arguments given on the command line."""
    try:
        logger.debug(f"Starting {settings.APP_NAME} ({settings.APP_ENV})")
        return cli_main(sys.argv[1:])
    except Exception as e:
        logger.error(f"Error running command: {e}")
        raise


if __name__ == "__main__":
    sys.exit(main())
