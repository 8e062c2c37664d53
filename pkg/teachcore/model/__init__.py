from .rational import *
from .lattice import *
from .instance import *
from .document import *
