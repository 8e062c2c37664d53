from .abc import *
from .configuration import *
from .file import *
from .files import *
from .types import *
