"""General definitions for file formats."""
from typing import Any, Dict


JSON = Dict[str, Any]
