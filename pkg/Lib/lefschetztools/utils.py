import argparse


def commaSeparatedList(arg):
    return set(arg.split(","))


def commaSeparatedIntegers(arg):
    try:
        values = [int(item) for item in arg.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"not a comma separated list of integers: '{arg}'"
        ) from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def alignColumns(rows, separator="  "):
    """Render a list of rows (lists of strings) as right-aligned text columns."""
    if not rows:
        return ""
    numColumns = max(len(row) for row in rows)
    widths = [0] * numColumns
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    return "\n".join(
        separator.join(cell.rjust(widths[i]) for i, cell in enumerate(row))
        for row in rows
    )
