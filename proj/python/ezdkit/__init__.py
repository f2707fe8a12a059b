"""Exact zero divisors and totally reflexive module families.

The heavy lifting happens in the compiled ``_core`` extension; this package
re-exports its surface.
"""

try:
    from ezdkit._core import *  # noqa: F401,F403
    from ezdkit._core import __doc__  # noqa: F401
except ImportError:  # running against a build tree where _core sits on sys.path
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
