from .generators import *
from .report import *
from .properties import *
from .suites import *
