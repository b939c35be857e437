
from src.specmin.testing import run_suite
from . import run

run_suite()
