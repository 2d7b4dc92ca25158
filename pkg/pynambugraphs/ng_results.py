"""
Persisted outcomes of pipeline runs
"""
import json
from datetime import datetime
from json.decoder import JSONDecodeError
from typing import Dict, List, Optional, Union

from ._datetime import fromisoformat_z
from .ng_format_version import RESULT_FORMAT_VERSION
from .ng_jetring import to_rational
from .py_ng_exceptions import NGCacheCorruptionException

KIND_TRIVIALIZATION = "trivialization"
KIND_KERNEL = "kernel"
KIND_HAMILTONIAN = "hamiltonian-expressions"
KIND_SYNONYMS = "synonyms"


def rational_text(value) -> str:
    value = to_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def coefficients_to_text(coefficients: Dict[str, object]) -> Dict[str, str]:
    return {name: rational_text(value) for name, value in coefficients.items()}


def coefficients_from_text(coefficients: Dict[str, str]) -> Dict[str, object]:
    return {name: to_rational(value) for name, value in coefficients.items()}


class PipelineResult(dict):
    """
    A dictionary describing one pipeline step. Coefficients are stored as
    "p/q" strings so the JSON form is exact; the properties return QQ values.

    Note
    ----
    A trivialization without solution has "solvable": false and no "solution"
    key. Expressions that failed are stored as null.
    """

    def __init__(self, dict_or_json: Union[str, dict] = None):
        if dict_or_json is None:
            dict_or_json = {}
        if isinstance(dict_or_json, str):
            try:
                dict_or_json = json.loads(dict_or_json)
            except JSONDecodeError as jdce:
                raise NGCacheCorruptionException(
                    f"Failed to unserialize result json: {jdce}") from jdce
        super().__init__(dict_or_json)
        self.setdefault("format_version", str(RESULT_FORMAT_VERSION))

    @classmethod
    def new(cls, kind: str, dimension: int, family: str, mode: str, names: List[str]):
        return cls({
            "kind": kind,
            "dimension": dimension,
            "family": family,
            "mode": mode,
            "names": list(names),
        })

    @property
    def kind(self) -> str:
        return self["kind"]

    @property
    def dimension(self) -> int:
        return self["dimension"]

    @property
    def family(self) -> str:
        return self["family"]

    @property
    def mode(self) -> str:
        return self["mode"]

    @property
    def names(self) -> List[str]:
        """
        List[str] : Column names, in column order
        """
        return self["names"]

    @property
    def solvable(self) -> Optional[bool]:
        return self.get("solvable")

    @property
    def solution(self) -> Optional[Dict[str, object]]:
        """
        Dict[str, QQ] : Coefficients of the particular solution, None when unsolvable
        """
        solution = self.get("solution")
        if solution is None:
            return None
        return coefficients_from_text(solution)

    def set_solution(self, coefficients: Optional[Dict[str, object]]):
        if coefficients is None:
            self["solvable"] = False
            self.pop("solution", None)
        else:
            self["solvable"] = True
            self["solution"] = coefficients_to_text(coefficients)

    @property
    def kernel(self) -> List[Dict[str, object]]:
        """
        List[Dict[str, QQ]] : Lifted representatives of the homogeneous kernel
        """
        return [coefficients_from_text(c) for c in self.get("kernel", [])]

    def set_kernel(self, representatives: List[Dict[str, object]]):
        self["kernel"] = [coefficients_to_text(c) for c in representatives]

    @property
    def kernel_dimension(self) -> int:
        return len(self.get("kernel", []))

    @property
    def expressions(self) -> List[Optional[Dict[str, object]]]:
        return [None if c is None else coefficients_from_text(c)
                for c in self.get("expressions", [])]

    def set_expressions(self, expressions: List[Optional[Dict[str, object]]]):
        self["expressions"] = [None if c is None else coefficients_to_text(c)
                               for c in expressions]

    @property
    def classes(self) -> List[Dict[str, object]]:
        """
        List[Dict[str, QQ]] : Synonym classes; each maps names to c with
        phi(name) = c * phi(first name)
        """
        return [coefficients_from_text(c) for c in self.get("classes", [])]

    def set_classes(self, classes: List[Dict[str, object]]):
        self["classes"] = [coefficients_to_text(c) for c in classes]

    @property
    def started_at(self) -> datetime:
        return fromisoformat_z(self["started"])

    @property
    def finished_at(self) -> datetime:
        return fromisoformat_z(self["finished"])

    @property
    def seconds(self) -> float:
        return self.get("seconds", 0.0)

    def to_json(self, timing: bool = True) -> str:
        """
        Sorted-key JSON; timing=False leaves out the run-dependent fields
        """
        data = dict(self)
        if not timing:
            for key in ("started", "finished", "seconds"):
                data.pop(key, None)
        return json.dumps(data, indent=2, sort_keys=True)
