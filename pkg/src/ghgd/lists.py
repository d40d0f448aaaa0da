"""Reading identifier lists and counting observed levels of overlap."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .exceptions import DomainError
from .problem import LOHistogram, ProblemSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ElementLists:
    lists: tuple[tuple[str, ...], ...]
    n: int
    universe: frozenset[str] | None = None
    names: tuple[str, ...] = ()

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(x) for x in self.lists)

    def spec(self) -> ProblemSpec:
        return ProblemSpec(self.n, self.sizes)


def read_identifiers(path, fold_case: bool = False) -> list[str]:
    """One identifier per line; blank lines and ``#`` comments are skipped."""
    ids = []
    with open(path, encoding="utf-8", newline=None) as fh:
        for line in fh:
            token = line.strip()
            if not token or token.startswith("#"):
                continue
            ids.append(token.casefold() if fold_case else token)
    return ids


def dedupe(ids: Iterable[str], name: str = "<list>") -> tuple[str, ...]:
    seen: dict[str, None] = {}
    for token in ids:
        if token in seen:
            log.warning("%s: duplicate identifier %r counted once", name, token)
        else:
            seen[token] = None
    return tuple(seen)


def build_lists(
    lists: Sequence[Iterable[str]],
    universe_size: int | None = None,
    universe: Iterable[str] | None = None,
    names: Sequence[str] | None = None,
) -> ElementLists:
    """Normalize in-memory lists against a universe given by size or members."""
    names = tuple(names) if names is not None else tuple(f"list{i}" for i in range(len(lists)))
    clean = tuple(dedupe(ids, name) for ids, name in zip(lists, names))
    if not clean:
        raise DomainError("at least one list is required")
    if (universe_size is None) == (universe is None):
        raise DomainError("give exactly one of a universe size or a universe list")
    members = None
    if universe is not None:
        members = frozenset(universe)
        outside = sorted({x for ids in clean for x in ids if x not in members})
        if outside:
            shown = ", ".join(outside[:10]) + (" ..." if len(outside) > 10 else "")
            raise DomainError(f"{len(outside)} identifiers are not in the universe: {shown}")
        n = len(members)
    else:
        n = int(universe_size)
        seen = len({x for ids in clean for x in ids})
        if seen > n:
            raise DomainError(f"{seen} distinct identifiers exceed universe size N={n}")
    for ids, name in zip(clean, names):
        if len(ids) > n:
            raise DomainError(f"{name}: {len(ids)} identifiers exceed universe size N={n}")
    return ElementLists(clean, n, members, names)


def ingest(paths: Sequence, universe_size: int | None = None, universe_path=None, fold_case: bool = False) -> ElementLists:
    if not paths:
        raise DomainError("at least one input file is required")
    raw = []
    for p in paths:
        try:
            raw.append(read_identifiers(p, fold_case))
        except OSError as exc:
            raise DomainError(f"cannot read {p}: {exc.strerror or exc}") from exc
    universe = None
    if universe_path is not None:
        try:
            universe = dedupe(read_identifiers(universe_path, fold_case), str(universe_path))
        except OSError as exc:
            raise DomainError(f"cannot read {universe_path}: {exc.strerror or exc}") from exc
    return build_lists(raw, universe_size, universe, [str(Path(p)) for p in paths])


def element_levels(lists: ElementLists) -> Counter:
    """Level of overlap of every identifier that appears in some list."""
    return Counter(x for ids in lists.lists for x in ids)


def observed_lo_counts(lists: ElementLists) -> LOHistogram:
    levels = element_levels(lists)
    counts = [0] * (len(lists.lists) + 1)
    for lo in levels.values():
        counts[lo] += 1
    counts[0] = lists.n - len(levels)
    return LOHistogram(tuple(counts))
