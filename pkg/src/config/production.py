# Production environment settings
from .common import *

# Debug settings
DEBUG = False
LOG_LEVEL = "INFO"

# Acceptance-run resolutions
DEFAULT_SPACING = 1 / 128
DEFAULT_TIME_STEP = 1e-3
DEFAULT_FINAL_TIME = 0.5
