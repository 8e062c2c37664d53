from .request import *
from .table import *
from .analyze import *
from .simulate import *
from .verify import *
from .generate import *
