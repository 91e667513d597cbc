import os
from pathlib import Path
from dotenv import load_dotenv
from django.core.management.utils import get_random_secret_key

# Load environment variables
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent.parent

# --- Security ---
SECRET_KEY = os.getenv("SECRET_KEY", get_random_secret_key())
DEBUG = os.getenv("DEBUG", "True") == "True"
ALLOWED_HOSTS = []

# --- Installed Apps ---
INSTALLED_APPS = [
    # Local apps
    "biased",
]

# --- Database ---
# Everything is computed in memory; nothing is persisted.
DATABASES = {}

# --- Internationalization ---
LANGUAGE_CODE = "en-us"
TIME_ZONE = "UTC"
USE_I18N = False
USE_TZ = True

# --- Search bounds & assertions ---
BIASED_GRAPHS = {
    "CYCLE_LIMIT": int(os.getenv("CYCLE_LIMIT", "1000000")),
    "MINOR_SEARCH_MAX_EDGES": int(os.getenv("MINOR_SEARCH_MAX_EDGES", "24")),
    "MINOR_SEARCH_MAX_NODES": int(os.getenv("MINOR_SEARCH_MAX_NODES", "2000000")),
    "CERTIFICATE_MAX_STATES": int(os.getenv("CERTIFICATE_MAX_STATES", "500000")),
    "MATROID_ISO_MAX_GROUND": int(os.getenv("MATROID_ISO_MAX_GROUND", "16")),
    "MATROID_AXIOM_CHECK_LIMIT": int(os.getenv("MATROID_AXIOM_CHECK_LIMIT", "1000")),
    "CONSTRUCTION_ATTEMPTS": int(os.getenv("CONSTRUCTION_ATTEMPTS", "6")),
    "ASSERT_THETA": os.getenv("ASSERT_THETA", str(DEBUG)) == "True",
}

# --- Logging ---
# Reports go to stdout; structured logs go to stderr.
LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "json": {
            "()": "pythonjsonlogger.json.JsonFormatter",
            "format": "%(asctime)s %(levelname)s %(name)s %(message)s",
        },
    },
    "handlers": {
        "stderr": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "json",
        },
    },
    "loggers": {
        "biased": {
            "handlers": ["stderr"],
            "level": LOG_LEVEL,
            "propagate": False,
        },
    },
}
