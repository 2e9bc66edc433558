"""Built-in corpus: six 16-pulse, 5-onset timelines with their known distances to the final cycle."""

from __future__ import annotations

from dataclasses import dataclass

from .core import OnsetRhythm


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    onsets: tuple[int, ...]
    expected_distance: int
    pulses: int = 16

    @property
    def rhythm(self) -> OnsetRhythm:
        return OnsetRhythm(self.pulses, frozenset(self.onsets))


CORPUS: tuple[CorpusEntry, ...] = (
    CorpusEntry("Bossa", (0, 3, 6, 10, 13), 0),
    CorpusEntry("Shiko", (0, 4, 6, 10, 12), 1),
    CorpusEntry("Son", (0, 3, 6, 10, 12), 1),
    CorpusEntry("Rumba", (0, 3, 7, 10, 12), 1),
    CorpusEntry("Soukous", (0, 3, 6, 10, 11), 3),
    CorpusEntry("Gahu", (0, 3, 6, 10, 14), 3),
)


def by_name(name: str) -> CorpusEntry:
    for e in CORPUS:
        if e.name.lower() == name.lower():
            return e
    raise KeyError(name)
