"""Entry point for python -m ialex."""

from ialex.cli import main

if __name__ == "__main__":
    main(prog_name="ialex")
