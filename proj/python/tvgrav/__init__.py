"""Total-variation gravity inversion with randomized GSVD."""

from ._tvgrav import *  # noqa: F401,F403
from ._tvgrav import __doc__  # noqa: F401
