from .linalg import *
from .geometry import *
from .classifier import *
from .learner import *
