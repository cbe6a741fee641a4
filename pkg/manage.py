#!/usr/bin/env python
"""Command-line entry point for the tropmod commands and Django's own."""
import os
import sys

ALIASES = {
    'verify-all': 'verify_all',
}


def main():
    """Run a tropmod subcommand or an administrative task."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tropmod_project.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    argv = list(sys.argv)
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    execute_from_command_line(argv)


if __name__ == '__main__':
    main()
