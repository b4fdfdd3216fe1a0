import os
import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT / "src"))

# quiet, single-threaded runs unless the caller says otherwise
os.environ.setdefault("LOG_LEVEL", "0")
os.environ.setdefault("LOG_FILE", "/dev/null")
os.environ.setdefault("LLQ_THREADS", "1")
