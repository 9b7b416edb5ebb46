"""Console entry point for the qeuler command."""

from qeuler.cli import cli


def main():
    cli(prog_name='qeuler')


if __name__ == '__main__':
    main()
