# Development/debug environment settings
from .common import *

# Debug settings
DEBUG = True
LOG_LEVEL = "DEBUG"

# Desk-scale resolutions
DEFAULT_SPACING = 1 / 32
DEFAULT_TIME_STEP = 1e-2
DEFAULT_FINAL_TIME = 0.5
