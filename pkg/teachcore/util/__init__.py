from .types import *
from .logger import *
