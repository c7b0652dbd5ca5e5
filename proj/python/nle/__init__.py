from ._nle import *  # noqa: F401,F403
from ._nle import __doc__  # noqa: F401
