import argparse
import logging
import os
import sys
import traceback
from . import algebraChecks
from .fixtures import resolveRing
from .ringFile import RingFileError
from .utils import commaSeparatedList


logger = logging.getLogger(__name__)


def selectChecks(include=(), exclude=(), kinds=()):
    """Registered checks in registration order, filtered by name and kind."""
    unknown = (set(include) | set(exclude)) - set(algebraChecks.checks)
    if unknown:
        logger.warning(f"no such checks: {', '.join(sorted(unknown))}")
    return [
        (checkName, checkFunc)
        for checkName, checkFunc in algebraChecks.checks.items()
        if (not include or checkName in include)
        and checkName not in exclude
        and (not kinds or algebraChecks.checkKinds[checkName] in kinds)
    ]


def lintRing(algebra, selectedChecks, verbose=False):
    """Yield (checkName, message) for every violation; a check that raises
    yields a single ERROR message.
    """
    for checkName, checkFunc in selectedChecks:
        try:
            for msg in checkFunc(algebra):
                yield checkName, msg
        except Exception as e:
            yield checkName, f"ERROR {e!r}"
            if verbose:
                traceback.print_exc()


def main(args=None):
    checkNames = ", ".join(algebraChecks.checks)
    parser = argparse.ArgumentParser(
        prog="ringlint",
        description=f"Run algebra checks on ring files or built-in rings: {checkNames}",
    )
    parser.add_argument("ring", nargs="+", help="Ring file or built-in ring name")
    parser.add_argument(
        "--verbose",
        action="store_true",
        help="Print a full traceback when a check raises",
    )
    parser.add_argument(
        "--include",
        type=commaSeparatedList,
        default=set(),
        help="Comma separated check names to run (default all)",
    )
    parser.add_argument(
        "--exclude",
        type=commaSeparatedList,
        default=set(),
        help="Comma separated check names to skip",
    )
    parser.add_argument(
        "--kind",
        choices=[algebraChecks.AXIOM, algebraChecks.DUALITY],
        action="append",
        default=[],
        help="Only run checks of this kind (repeatable)",
    )
    parser.add_argument(
        "--custom-checks",
        type=existingPythonSource,
        action="append",
        default=[],
        help="Python file registering more checks with @algebracheck",
    )
    args = parser.parse_args(args)

    logging.basicConfig(level=logging.WARNING)

    for customChecksSource in args.custom_checks:
        execFile(customChecksSource)
    selectedChecks = selectChecks(args.include, args.exclude, args.kind)

    numMessages = 0
    for ringName in args.ring:
        try:
            algebra = resolveRing(ringName, validate=False)
        except RingFileError as e:
            print(f"{ringName}: ERROR {e}")
            numMessages += 1
            continue
        previousCheck = None
        for checkName, msg in lintRing(algebra, selectedChecks, args.verbose):
            if numMessages and checkName != previousCheck:
                print()
            previousCheck = checkName
            print(f"{ringName}:{checkName}: {msg}")
            numMessages += 1
    return 1 if numMessages else 0


def existingPythonSource(path):
    if not os.path.isfile(path):
        raise argparse.ArgumentTypeError(f"no such file: '{path}'")
    if not path.lower().endswith(".py"):
        raise argparse.ArgumentTypeError(f"not a .py file: '{path}'")
    return path


def execFile(path):
    with open(path, encoding="utf-8") as f:
        exec(compile(f.read(), path, "exec"), {"__file__": path})


if __name__ == "__main__":
    sys.exit(main())
