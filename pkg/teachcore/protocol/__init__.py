from .abc import *
from .teacher import *
from .engine import *
from .search import *
