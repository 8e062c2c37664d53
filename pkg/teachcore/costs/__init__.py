from .cost import *
from .search import *
