import json
import pathlib
from json.decoder import JSONDecodeError
from typing import List, Optional

from ._ng_eval_cache import default_cache_dir
from .graphs._family_registry import GraphFamilyFactory
from .ng_jetring import SUPPORTED_DIMENSIONS
from .ng_morphism import MODES
from .ng_pair_search import DEFAULT_CELL_BUDGETS
from .ng_pipelines import default_mode
from .py_ng_exceptions import NGConfigException

STEP_TRIVIALIZE = "trivialize"
STEP_KERNEL = "kernel"
STEP_HAMILTONIANS = "hamiltonians"
STEP_SYNONYMS = "synonyms"
STEPS = (STEP_TRIVIALIZE, STEP_KERNEL, STEP_HAMILTONIANS, STEP_SYNONYMS)

FORMATS = ("text", "json", "csv")


class RunConfig(dict):
    """
    Settings for one pipeline or table run. Loaded from a JSON file or built
    from parsed arguments, validated before anything is computed, and written
    into the run manifest.
    """
    DEFAULTS = {
        "dimension": 2,
        "family": None,
        "sources": None,
        "mode": None,
        "cache_dir": None,
        "use_cache": True,
        "budget": None,
        "out": None,
        "format": "text",
        "jobs": 1,
        "isolate": False,
        "steps": list(STEPS[:3]),
    }

    def __init__(self, config_dict: dict = None):
        super().__init__(self.DEFAULTS)
        if config_dict:
            unknown = set(config_dict) - set(self.DEFAULTS)
            if unknown:
                raise NGConfigException(f"unknown settings {sorted(unknown)}")
            self.update(config_dict)

    @classmethod
    def from_file(cls, configpath) -> "RunConfig":
        try:
            config_json = open(configpath, "r").read()
        except (FileNotFoundError, PermissionError) as e:
            raise NGConfigException(f"unable to read {configpath}: {e}") from e
        try:
            config = json.loads(config_json)
        except JSONDecodeError as e:
            raise NGConfigException(f"unable to json decode {configpath}: {e}") from e
        return cls(config)

    @classmethod
    def from_args(cls, args, base: "RunConfig" = None) -> "RunConfig":
        """
        Settings given on the command line, on top of `base` (usually a
        config file) when there is one
        """
        config = {} if base is None else {k: base[k] for k in cls.DEFAULTS}
        for key in cls.DEFAULTS:
            value = getattr(args, key, None)
            if value is not None:
                config[key] = value
        return cls(config)

    def validate(self) -> "RunConfig":
        if self.dimension not in SUPPORTED_DIMENSIONS:
            raise NGConfigException(
                f"dimension {self.dimension} not in {list(SUPPORTED_DIMENSIONS)}")
        if self.family not in GraphFamilyFactory.family_ids():
            raise NGConfigException(
                f"family '{self.family}' not in {GraphFamilyFactory.family_ids()}")
        if self.mode not in MODES:
            raise NGConfigException(f"mode '{self.mode}' not in {list(MODES)}")
        if self.mode != "plain" and self.dimension != 4:
            raise NGConfigException(f"mode '{self.mode}' needs dimension 4")
        if self.format not in FORMATS:
            raise NGConfigException(f"format '{self.format}' not in {list(FORMATS)}")
        bad_steps = [s for s in self.steps if s not in STEPS]
        if bad_steps:
            raise NGConfigException(f"unknown steps {bad_steps}")
        if self.budget is not None and self.budget <= 0:
            raise NGConfigException(f"budget must be positive: {self.budget}")
        if self.jobs < 1:
            raise NGConfigException(f"jobs must be at least 1: {self.jobs}")
        return self

    @property
    def dimension(self) -> int:
        return self["dimension"]

    @property
    def family(self) -> str:
        """
        str : Family registry name; "fixtures" in 2D, "descendants" otherwise
        """
        family = self["family"]
        if family is None:
            family = "fixtures" if self.dimension == 2 else "descendants"
        return family

    @property
    def sources(self) -> Optional[List[str]]:
        return self["sources"]

    @property
    def mode(self) -> str:
        mode = self["mode"]
        if mode is None:
            mode = default_mode(self.dimension)
        return mode

    @property
    def cache_dir(self) -> pathlib.Path:
        cache_dir = self["cache_dir"]
        if cache_dir is None:
            return default_cache_dir()
        return pathlib.Path(cache_dir)

    @property
    def use_cache(self) -> bool:
        return self["use_cache"]

    @property
    def budget(self) -> Optional[float]:
        return self["budget"]

    @property
    def cell_budget(self) -> float:
        if self.budget is not None:
            return self.budget
        return DEFAULT_CELL_BUDGETS[self.dimension]

    @property
    def out(self) -> Optional[pathlib.Path]:
        out = self["out"]
        return None if out is None else pathlib.Path(out)

    @property
    def format(self) -> str:
        return self["format"]

    @property
    def jobs(self) -> int:
        return self["jobs"]

    @property
    def isolate(self) -> bool:
        return self["isolate"]

    @property
    def steps(self) -> List[str]:
        return list(self["steps"])

    def manifest_dict(self) -> dict:
        """
        The resolved settings, JSON-ready
        """
        return {
            "dimension": self.dimension,
            "family": self.family,
            "sources": self.sources,
            "mode": self.mode,
            "cache_dir": str(self.cache_dir) if self.use_cache else None,
            "budget": self.cell_budget,
            "format": self.format,
            "jobs": self.jobs,
            "isolate": self.isolate,
            "steps": self.steps,
        }
