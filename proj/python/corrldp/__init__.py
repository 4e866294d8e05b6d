"""Locally private multi-attribute frequency estimation.

Thin wrapper around the compiled extension module. The extension lives next
to this package when installed as a wheel and on sys.path when used straight
from a build tree.
"""

try:
    from ._corrldp import *  # noqa: F401,F403
    from ._corrldp import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _corrldp import *  # noqa: F401,F403
    from _corrldp import __version__  # noqa: F401
