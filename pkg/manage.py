#!/usr/bin/env python
"""Django's command-line utility for administrative tasks and the codec CLI."""
import os
import sys


def main():
    """Run administrative tasks or a codec subcommand."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        import django
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc

    if len(sys.argv) > 1 and not sys.argv[1].startswith('-'):
        django.setup()
        from shared.infrastructure.cli import SUBCOMMANDS, run
        if sys.argv[1] in SUBCOMMANDS:
            sys.exit(run(sys.argv[1:]))
    execute_from_command_line(sys.argv)


if __name__ == '__main__':
    main()
