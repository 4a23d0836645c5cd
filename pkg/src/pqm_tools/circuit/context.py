"""
Label contexts: finite maps from labels to wire type names.
"""
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from ..syntax import Label
from .errors import CircuitError


class LabelContext(Mapping[Label, str]):
    """
    Immutable finite map `label -> wire type`, iterated in label order.
    """

    _data: Dict[Label, str]

    class Overlap(CircuitError):
        """
        Two label contexts that were expected to be disjoint share a label.
        """

        label: Label

        def __init__(self, label: Label, *args):
            super().__init__(args)
            self.label = label

        def __str__(self):
            """Print exception string"""
            return f"label {self.label} bound twice"

    def __init__(
        self,
        entries: Mapping[Label | str | int, str]
        | Iterable[Tuple[Label | str | int, str]] = (),
    ):
        items = entries.items() if isinstance(entries, Mapping) else entries
        data: Dict[Label, str] = {}
        for key, wire in items:
            data[Label.parse(key)] = wire
        self._data = dict(sorted(data.items()))

    def __getitem__(self, label: Label) -> str:
        """Wire type of `label`"""
        return self._data[label]

    def __iter__(self) -> Iterator[Label]:
        """Labels in increasing order"""
        return iter(self._data)

    def __len__(self) -> int:
        """Number of labels"""
        return len(self._data)

    def __hash__(self) -> int:
        """Hash of the sorted entries"""
        return hash(tuple(self._data.items()))

    def __repr__(self) -> str:
        """Debug representation"""
        return f"LabelContext({self})"

    def __str__(self) -> str:
        """Render as `{L0:Qubit, ...}`"""
        return (
            "{"
            + ", ".join(f"{label}:{wire}" for label, wire in self.items())
            + "}"
        )

    def union(self, other: Mapping[Label, str]) -> "LabelContext":
        """
        Disjoint union; raises `LabelContext.Overlap` on a shared label.
        """
        for label in other:
            if label in self._data:
                raise LabelContext.Overlap(label)
        return LabelContext({**self._data, **other})

    def without(self, labels: Iterable[Label]) -> "LabelContext":
        """
        Context with `labels` removed.
        """
        dropped = set(labels)
        return LabelContext(
            (label, wire)
            for label, wire in self._data.items()
            if label not in dropped
        )

    def rename(self, mapping: Mapping[Label, Label]) -> "LabelContext":
        """
        Apply a label renaming; labels outside `mapping` are kept.
        """
        renamed: Dict[Label, str] = {}
        for label, wire in self._data.items():
            target = mapping.get(label, label)
            if target in renamed:
                raise LabelContext.Overlap(target)
            renamed[target] = wire
        return LabelContext(renamed)
