from typing import Dict, List, Tuple

from pynambugraphs.ng_jetring import to_rational

from .expected_data import ExpectedData


def _rationals(table: Dict[str, str]) -> Dict[str, object]:
    return {name: to_rational(value) for name, value in table.items()}


class ExpectedPipeline:
    def __init__(self, pipeline_dict: Dict):
        self._data = pipeline_dict

    @property
    def trivializing_pair(self) -> Tuple[str, str]:
        row, column = self._data["trivializing-pair"]
        return row, column

    @property
    def trivializing_ratio(self):
        return to_rational(self._data["trivializing-ratio"])

    @property
    def kernel(self) -> List[Dict[str, object]]:
        return [_rationals(c) for c in self._data["kernel"]]

    @property
    def expressions(self) -> List[Dict[str, object]]:
        return [_rationals(c) for c in self._data["expressions"]]


class ExpectedPipelineData:
    def __init__(self):
        expected_data = ExpectedData()
        pipeline_data: Dict = expected_data.pipeline_data
        self._data: Dict = pipeline_data

    def data_for_dimension(self, dimension: int) -> ExpectedPipeline:
        pipeline_dict = self._data[str(dimension)]
        return ExpectedPipeline(pipeline_dict)
