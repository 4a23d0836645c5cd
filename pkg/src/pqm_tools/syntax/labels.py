"""
Labels: symbolic names of circuit wires.

Labels are `L0`, `L1`, ... and are totally ordered by their index.
"""
import re
from dataclasses import dataclass

LABEL_PATTERN = re.compile(r"^L(0|[1-9][0-9]*)$")


@dataclass(frozen=True, order=True)
class Label:
    """
    A single wire label.
    """

    index: int

    class InvalidLabel(Exception):
        """
        Text that does not spell a label.
        """

        text: str

        def __init__(self, text: str, *args):
            super().__init__(args)
            self.text = text

        def __str__(self):
            """Print exception string"""
            return f"invalid label: {self.text!r}"

    def __str__(self) -> str:
        """Render as `L<index>`"""
        return f"L{self.index}"

    @staticmethod
    def parse(text: "str | int | Label") -> "Label":
        """
        Parses `L<n>` strings, plain indices and labels.
        """
        if isinstance(text, Label):
            return text
        if isinstance(text, int):
            if text < 0:
                raise Label.InvalidLabel(str(text))
            return Label(text)
        match = LABEL_PATTERN.match(text)
        if match is None:
            raise Label.InvalidLabel(text)
        return Label(int(match.group(1)))
