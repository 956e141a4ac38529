import os
from dotenv import load_dotenv

load_dotenv()

ALLOWED_EXTENSIONS = {".json"}
MAX_PRESENTATION_FILE_SIZE = int(os.getenv("SPBW_MAX_PRESENTATION_SIZE", str(1024 * 1024)))

# ========== CERTIFICATION CONFIG ==========
DEFAULT_DEGREE = int(os.getenv("SPBW_DEGREE", "6"))
DEFAULT_TRIALS = int(os.getenv("SPBW_TRIALS", "200"))
DEFAULT_SEED = int(os.getenv("SPBW_SEED", "0"))
DIAMOND_DEGREE = int(os.getenv("SPBW_DIAMOND_DEGREE", "5"))
RECONSTRUCTION_SAMPLES = int(os.getenv("SPBW_RECONSTRUCTION_SAMPLES", "20"))
DUALITY_SAMPLES = int(os.getenv("SPBW_DUALITY_SAMPLES", "50"))
# ========== END CERTIFICATION CONFIG ==========

# Random sampling
RANDOM_COEFF_DEGREE = 3
RANDOM_ELEMENT_DEGREE = 6
RANDOM_MAX_TERMS = 4

# Rewriting engine cache
PRODUCT_CACHE_MAX_SIZE = int(os.getenv("SPBW_PRODUCT_CACHE_MAX_SIZE", "200000"))

# Logging
LOG_LEVEL = os.getenv("SPBW_LOG_LEVEL", "WARNING").upper()

# Certificate schema
SCHEMA_VERSION = "1.0"


def get_default_degree() -> int:
    """Degree bound for the CLI, honouring SPBW_DEGREE set after import."""
    return int(os.getenv("SPBW_DEGREE", str(DEFAULT_DEGREE)))
