# flake8: noqa
from .certificates import *
from .data import *
from .experiments import *
from .metrics import *
from .objectives import *
from .ops import *
from .solvers import *
from .utils import *
from .version import __gitsha__, __version__
