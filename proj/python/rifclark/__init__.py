"""Clark measures of rational inner functions on the bidisk and polydisk."""

from ._rifclark import *  # noqa: F401,F403
from ._rifclark import __doc__  # noqa: F401
