__title__ = "pynambugraphs"
__version__ = "0.9.0"
__summary__ = "Exact evaluation of Kontsevich micro-graphs for Nambu-determinant Poisson structures"

"""
See PEP 440 for version scheme
https://www.python.org/dev/peps/pep-0440/#examples-of-compliant-version-schemes

X.Y.devN  # development release
X.YaN     # Alpha release
X.YbN     # Beta release
X.YrcN    # Release Candidate
X.Y       # Final release
"""
