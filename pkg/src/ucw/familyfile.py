"""Plain-text interchange format for set families.

Document layout (7-bit text, LF-terminated lines)::

    ucs 1
    m=5
    -
    1
    1 2
    # comment lines are ignored anywhere

Line 1 is the format+version header, line 2 the universe size (1..64).
Each remaining line is one member set: ``-`` for the empty set, otherwise
strictly increasing elements of 1..m separated by single spaces. Duplicate
sets are rejected. Parsing always yields a canonically ordered family, so
``parse(serialize(f)) == f`` and serializing a parse canonicalizes the input.
"""

from .core import Family, elements_of

HEADER = "ucs 1"

# stable error codes, one per rejection class
BAD_HEADER = "bad-header"
M_OUT_OF_RANGE = "m-out-of-range"
BAD_SET_LINE = "bad-set-line"
ELEMENT_ORDER = "element-order"
ELEMENT_OUT_OF_RANGE = "element-out-of-range"
DUPLICATE_SET = "duplicate-set"
EMPTY_BODY = "empty-body"


class FamilyParseError(ValueError):
    """Strict-parse failure; ``code`` is one of the module-level constants."""

    def __init__(self, code: str, message: str, line_no: int | None = None):
        self.code = code
        self.line_no = line_no
        where = f" (line {line_no})" if line_no is not None else ""
        super().__init__(f"{code}: {message}{where}")


def parse_family(text: str) -> Family:
    """Parse a family document; raises FamilyParseError with a stable code."""
    lines = [
        (i + 1, line)
        for i, line in enumerate(text.split("\n"))
        if not line.startswith("#")
    ]
    # a trailing newline produces one empty trailing entry; drop it
    if lines and lines[-1][1] == "":
        lines.pop()
    if not lines or lines[0][1] != HEADER:
        got = lines[0][1] if lines else "<empty>"
        raise FamilyParseError(BAD_HEADER, f"expected {HEADER!r}, got {got!r}", 1)
    if len(lines) < 2 or not lines[1][1].startswith("m="):
        raise FamilyParseError(BAD_HEADER, "expected 'm=<int>' on line 2", 2)
    m_text = lines[1][1][2:]
    try:
        m = int(m_text)
    except ValueError:
        raise FamilyParseError(BAD_HEADER, f"bad universe size {m_text!r}", 2) from None
    if not 1 <= m <= 64:
        raise FamilyParseError(M_OUT_OF_RANGE, f"m must be in 1..64, got {m}", 2)

    seen: set[int] = set()
    ordered: list[int] = []
    for line_no, line in lines[2:]:
        if line == "-":
            mask = 0
        else:
            mask = 0
            prev = 0
            for token in line.split(" "):
                try:
                    e = int(token)
                except ValueError:
                    raise FamilyParseError(
                        BAD_SET_LINE, f"bad element token {token!r}", line_no
                    ) from None
                if e <= prev:
                    raise FamilyParseError(
                        ELEMENT_ORDER,
                        f"elements must be strictly increasing, got {e} after {prev}",
                        line_no,
                    )
                if e > m:
                    raise FamilyParseError(
                        ELEMENT_OUT_OF_RANGE, f"element {e} > m={m}", line_no
                    )
                mask |= 1 << (e - 1)
                prev = e
        if mask in seen:
            raise FamilyParseError(DUPLICATE_SET, f"set {line!r} repeated", line_no)
        seen.add(mask)
        ordered.append(mask)
    if not ordered:
        raise FamilyParseError(EMPTY_BODY, "no set lines")
    return Family.from_sets(m, ordered)


def _set_line(mask: int) -> str:
    if mask == 0:
        return "-"
    return " ".join(str(e) for e in elements_of(mask))


def serialize_family(f: Family) -> str:
    """Canonical rendering; byte-stable for equal families."""
    lines = [HEADER, f"m={f.m}"]
    lines.extend(_set_line(s) for s in f.sets)
    return "\n".join(lines) + "\n"


def load_family(path) -> Family:
    with open(path, "r", encoding="ascii") as fh:
        return parse_family(fh.read())


def save_family(path, f: Family) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(serialize_family(f))
