"""Console entry point; the implementation lives in harness."""

from .harness import cli_dispatch, main

__all__ = ["cli_dispatch", "main"]

if __name__ == "__main__":
    main()
