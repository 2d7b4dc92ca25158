import json

from typing import Dict

from .paths import EXPECTED_DATA_PATH


class ExpectedData:
    def __init__(self):
        data = json.load(open(EXPECTED_DATA_PATH, "r"))
        self._data = data

    def lookup_formula(self, formula_id):
        formula_data = self.formula_data
        formula = formula_data[formula_id]
        return formula

    def lookup_descendants(self, encoding):
        descendant_data = self.descendant_data
        return descendant_data[encoding]

    def lookup_embedding(self, encoding):
        embedding_data = self.embedding_data
        return embedding_data[encoding]

    @property
    def formula_data(self) -> Dict[str, Dict]:
        return self._data["formulas"]

    @property
    def count_data(self) -> Dict[str, Dict]:
        return self._data["counts"]

    @property
    def descendant_data(self) -> Dict[str, Dict]:
        return self._data["descendants"]

    @property
    def embedding_data(self) -> Dict[str, Dict]:
        return self._data["embeddings"]

    @property
    def parse_error_data(self) -> Dict[str, Dict]:
        return self._data["parse-errors"]

    @property
    def structure_error_data(self) -> Dict[str, Dict]:
        return self._data["structure-errors"]

    @property
    def pipeline_data(self) -> Dict[str, Dict]:
        return self._data["pipelines"]
