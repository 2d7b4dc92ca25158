"""
The bracket encoding of micro-graphs: "[0,1,4;1,3,5;1,2,6]".

Groups are separated by semicolons, one group per Levi-Civita vertex, and
list that vertex's edge targets in order. Parentheses are accepted in place
of brackets, and whitespace after separators is ignored.
"""
from typing import List, Optional

from ..py_ng_exceptions import NGParseException, NGStructureException
from .micro_graph import SINK, MicroGraph

_CLOSING = {"[": "]", "(": ")"}


def _tokenize_groups(text: str) -> List[List[int]]:
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped:
        raise NGParseException("empty encoding", text=text, position=0)
    opener = stripped[0]
    if opener not in _CLOSING:
        raise NGParseException("expected '[' or '('", text=text, position=offset)
    if stripped[-1] != _CLOSING[opener]:
        raise NGParseException(f"expected closing '{_CLOSING[opener]}'",
                               text=text, position=offset + len(stripped) - 1)
    groups: List[List[int]] = [[]]
    number = ""
    expect_number = True
    for i, char in enumerate(stripped[1:-1], start=offset + 1):
        if char.isdigit():
            if not expect_number and not number:
                raise NGParseException("missing separator", text=text, position=i)
            number += char
            continue
        if number:
            groups[-1].append(int(number))
            number = ""
            expect_number = False
        if char.isspace():
            continue
        if char in ",;":
            if expect_number:
                raise NGParseException("missing vertex label", text=text, position=i)
            if char == ";":
                groups.append([])
            expect_number = True
            continue
        raise NGParseException(f"unexpected character '{char}'", text=text, position=i)
    if number:
        groups[-1].append(int(number))
    elif expect_number:
        raise NGParseException("missing vertex label",
                               text=text, position=offset + len(stripped) - 1)
    return groups


def parse_encoding(text: str, dimension: int, has_sink: Optional[bool] = None) -> MicroGraph:
    """
    Parse a bracket encoding into a MicroGraph

    Parameters
    ----------
    text : str
        The encoding, e.g. "[0,1;2,3;1,3]"
    dimension : int
        Base dimension d; every group must list d targets
    has_sink : bool, optional
        Whether vertex 0 is a sink. Inferred from the targets when omitted.

    Raises
    ------
    NGParseException
        For malformed text, including groups of unequal length
    NGStructureException
        For well-formed text that breaks the micro-graph rules
    """
    groups = _tokenize_groups(text)
    lengths = {len(group) for group in groups}
    if len(lengths) > 1:
        raise NGParseException(
            f"groups have unequal lengths {sorted(lengths)}", text=text, position=text.find(";"))
    if lengths.pop() != dimension:
        raise NGStructureException(
            f"each group must list {dimension} targets", text=text)
    if has_sink is None:
        has_sink = any(SINK in group for group in groups)
    try:
        graph = MicroGraph(dimension, has_sink, tuple(tuple(g) for g in groups))
    except NGStructureException as e:
        raise NGStructureException(e.detail, text=text) from e
    return graph


def serialize(graph: MicroGraph) -> str:
    return graph.encoding()
