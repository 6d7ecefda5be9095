from __future__ import annotations


class ModelError(Exception):
    """Runtime failure inside the model chain (CLI exit code 3)."""


class ValidationError(ValueError):
    """Invalid input data (CLI exit code 2).

    ``file``, ``row`` and ``column`` locate the offending value when known;
    ``row`` is 1-based and counts the header as row 1.
    """

    def __init__(self, message: str, *, file: str | None = None,
                 row: int | None = None, column: str | None = None):
        self.reason = message
        self.file = file
        self.row = row
        self.column = column
        super().__init__(self._render())

    def _render(self) -> str:
        where = []
        if self.file:
            where.append(str(self.file))
        if self.row is not None:
            where.append(f"row {self.row}")
        if self.column:
            where.append(f"column '{self.column}'")
        if not where:
            return self.reason
        return f"{', '.join(where)}: {self.reason}"
