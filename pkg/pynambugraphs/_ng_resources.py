import json

try:
    from importlib.resources import files as pkgfiles
except ImportError:
    # python 3.8
    from importlib_resources import files as pkgfiles

from . import data


def data_path(fname: str):
    """
    Traversable for a table shipped in pynambugraphs/data
    """
    return pkgfiles(data).joinpath(fname)


def load_data_json(fname: str) -> dict:
    with data_path(fname).open("r") as _file:
        return json.load(_file)
