import itertools

from cayleykit import Mapping


def all_tables(n):
    """All n^n mapping tables on [n], lexicographic."""
    return itertools.product(range(1, n + 1), repeat=n)


def all_mappings(n):
    for table in all_tables(n):
        yield Mapping(n, table)
